#!/usr/bin/env python

#   pyfbmclt: simulation and verification lab for the central limit
#   theorem of additive functionals of fractional Brownian motion
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.

from setuptools import setup

setup(name='pyfbmclt',
    version='0.3.0',
    author='pyfbmclt developers',
    description='CLT lab for additive functionals of fractional Brownian motion',
    long_description=open('README.md').read(),
    license='LICENSE',
    packages = [
        'pyfbmclt',
        'pyfbmclt.commands',
    ],
    package_data = {
        'pyfbmclt': ['report_schema.json'],
    },
    install_requires = [
        'numpy>=1.17',
        'scipy>=1.6',
        'jsonschema>=3.2',
    ],
    tests_require = [
        'pytest',
    ],
    entry_points = {
        'console_scripts': [
            'pyfbmclt = pyfbmclt.cli:main',
        ],
    },
)
