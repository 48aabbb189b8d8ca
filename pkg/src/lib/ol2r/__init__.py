from ._errors import *
from ._data import *
from ._ranking import *
from ._gradient import *
from ._interleaving import *
from ._clicks import *
from ._metrics import *
from ._history import *
from ._learner import *
from ._simulation import *
