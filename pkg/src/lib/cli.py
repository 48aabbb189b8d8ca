#!/usr/bin/env python3

# Additional command line utilities that should be common in these
# packages.

import json
import logging
import os
import sys

from .ol2r import ConfigurationError


def ask_yn(label, default=True):
    while True:
        answer = input(label + " " + ("(Y/n)" if default else "(y/N)") + " ").lower()
        if not answer and default or answer == 'y':
            return True
        elif not answer and not default or answer == 'n':
            return False
        else:
            print("Invalid option. Choose either y or n.")


def confirm_overwrite(path, force=False):
    """Checks that writing to `path` may replace an existing file. Asks on
    a terminal; refuses otherwise unless `force` is set."""
    if force or not path or not os.path.exists(path):
        return
    if sys.stdin.isatty() and ask_yn("{} exists. Overwrite?".format(path), default=False):
        return
    raise ConfigurationError("{} exists; pass --force to overwrite it".format(path))


def load_config(path):
    """Reads a flat JSON object of scalar settings."""
    with open(path) as stream:
        try:
            values = json.load(stream)
        except json.JSONDecodeError as e:
            raise ConfigurationError("{}: not valid JSON ({})".format(path, e))
    if not isinstance(values, dict):
        raise ConfigurationError("{}: expected a JSON object of settings".format(path))
    for key, value in values.items():
        if isinstance(value, (dict, list)):
            raise ConfigurationError("{}: setting {!r} must be a scalar".format(path, key))
    return {key.replace('-', '_'): value for key, value in values.items()}


def parse_bool(text):
    if isinstance(text, bool):
        return text
    lowered = str(text).lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean, got {!r}".format(text))


def parse_list(text, convert=str):
    """Splits a comma separated option value."""
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [item.strip() for item in str(text).split(',') if item.strip()]
    try:
        return [convert(item) for item in items]
    except ValueError as e:
        raise ConfigurationError("bad list value {!r}: {}".format(text, e))


def parse_key_values(text):
    """Parses `a=1,b=2` into a dict of strings."""
    values = {}
    for item in parse_list(text):
        key, sep, value = item.partition('=')
        if not sep or not key:
            raise ConfigurationError("expected key=value, got {!r}".format(item))
        values[key.strip()] = value.strip()
    return values


def setup_logging(verbosity=0):
    """Logs to stderr; -1 quiet, 0 normal, 1 verbose."""
    level = {-1: logging.WARNING, 0: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s", force=True)
