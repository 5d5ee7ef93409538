#! /usr/bin/python3
#
# Copyright (C) 2015 LM3FE development team
#
# This file is part of lm3fe, which is released under the terms of
# GNU GPLv3. See COPYING at top level for more information.
#

from setuptools import setup

setup(
    name='lm3fe',
    version='1.0',
    license='GPLv3',
    description='Large margin multi-modal multi-task feature extraction.',
    author='LM3FE development team',
    install_requires=[
        'tornado >= 5.0',
        'sqlalchemy >= 1.4',
        'numpy >= 1.17',
        'scipy >= 1.1',
        'scikit-learn >= 0.22',
    ],
    python_requires='>= 3.7',
    packages=[
        'lm3fe',
        'lm3fe.data',
        'lm3fe.solver',
        'lm3fe.extraction',
        'lm3fe.baselines',
        'lm3fe.persistence',
        'lm3fe.cli',
        'lm3fe.test',
    ],
    scripts=[
        'lm3fe.py',
    ],
    data_files=[
        ('etc', [
            'lm3fe.conf'
        ])
    ]
)
