from setuptools import find_packages, setup

from toricech.version import __version__


setup(
    name='toricech',
    version=__version__,
    description='ECH capacities and embedding obstructions of convex toric domains',
    packages=find_packages(exclude=('tests', 'tests.*')),
    python_requires='>=3.8',
    install_requires=['numpy', 'sympy'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['toricech=toricech.cli:console_entry']},
)
