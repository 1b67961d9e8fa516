import os
from setuptools import setup, find_packages


def read_file(filename):
    """Read a file into a string"""
    path = os.path.abspath(os.path.dirname(__file__))
    filepath = os.path.join(path, filename)
    try:
        return open(filepath).read()
    except IOError:
        return ''


def get_readme():
    """Return the README file contents. Supports text,rst, and markdown"""
    for name in ('README', 'README.rst', 'README.md'):
        if os.path.exists(name):
            return read_file(name)
    return ''

# Use the docstring of the __init__ file to be the description
DESC = " ".join(__import__('fdalg').__doc__.splitlines()).strip()

setup(
    name="fdalg",
    version=__import__('fdalg').get_version().replace(' ', '-'),
    description=DESC,
    long_description=get_readme(),
    packages=find_packages(exclude=['examples', 'examples.*']),
    include_package_data=True,
    install_requires=read_file('requirements.txt').split(),
    extras_require={
        'test': ['pytest', 'hypothesis'],
        'docs': ['sphinx'],
    },
    entry_points={
        'console_scripts': ['fdalg = fdalg.cli:main'],
    },
    python_requires='>=3.7',
    classifiers=[
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
