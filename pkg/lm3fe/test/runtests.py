#!/usr/bin/env python3
#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

"""
Run the whole suite with `python3 -m lm3fe.test.runtests`.
"""

import unittest

import tornado.testing


TEST_MODULES = [
    'lm3fe.test.test_data',
    'lm3fe.test.test_hinge',
    'lm3fe.test.test_wsolver',
    'lm3fe.test.test_usolver',
    'lm3fe.test.test_theta',
    'lm3fe.test.test_driver',
    'lm3fe.test.test_extraction',
    'lm3fe.test.test_baselines',
    'lm3fe.test.test_persistence',
    'lm3fe.test.test_cli',
]


def all():
    return unittest.defaultTestLoader.loadTestsFromNames(TEST_MODULES)


if __name__ == '__main__':
    tornado.testing.main()
