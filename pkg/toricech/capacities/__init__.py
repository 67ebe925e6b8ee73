from toricech.capacities.oracles import *
from toricech.capacities.capacity import *
