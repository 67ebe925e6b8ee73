from toricech.bounds.families import *
from toricech.bounds.threshold import *
