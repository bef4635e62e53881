#!/usr/bin/env python
#-*- coding: utf-8 -*-

from setuptools import setup

setup(
    name='TrapWalk',
    version='0.1.0',
    description ='TrapWalk - quantum walks of atoms in optical microtraps',
    license='GNU General Public License V.3 or later',
    long_description=open('README.txt').read(),
    python_requires='>=3.8',
    install_requires=['numpy>=1.17', 'scipy>=1.5', 'sympy>=1.5', 'matplotlib>=3.0'],

    packages=['trapwalk', 'trapwalk.lab', 'trapwalk.examples', 'trapwalk.test'],
    entry_points={'console_scripts': ['trapwalk=trapwalk.cli:main']},
)
