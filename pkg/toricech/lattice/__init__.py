from toricech.lattice.generator import *
from toricech.lattice.factorization import *
from toricech.lattice.enumeration import *
