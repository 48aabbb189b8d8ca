#!/usr/bin/env python3

import argparse
import sys

parser = argparse.ArgumentParser(description='Experiment runner for online learning to rank. Dispatches to the main module of a project under src/projects.')
parser.add_argument('project_name', type=str, help='The project to run.')
args = parser.parse_args(sys.argv[1:2])

class Project:
    def __init__(self, proj_name):
        self.proj_name = proj_name
        self.modname = 'src.projects.{}.main'.format(self.proj_name)
        try:
            self.module = __import__(self.modname, fromlist=[''])
        except ModuleNotFoundError:
            sys.exit("error: no project named {!r} in src/projects".format(proj_name))

    def run(self):
        self.module.main(sys.argv[2:])

proj = Project(args.project_name)

proj.run()
