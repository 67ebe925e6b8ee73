from toricech.domains.toric import *
