from .version import __version__

from toricech import bounds
from toricech import capacities
from toricech import core
from toricech import domains
from toricech import lattice
from toricech import obstruct
from toricech import utils
