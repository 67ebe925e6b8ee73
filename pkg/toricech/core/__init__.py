from toricech.core import errors
from toricech.core import parallel
from toricech.core import rational
from toricech.core.errors import *
