from toricech.obstruct.relation import *
from toricech.obstruct.certificate import *
from toricech.obstruct.witness import *
