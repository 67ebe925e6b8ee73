from typing import Optional

import random
import numpy

from toricech.utils.tracker import *


def enable_reproducibility(seed: Optional[int] = None) -> numpy.random.Generator:
    if seed is not None:
        random.seed(seed)
        numpy.random.seed(seed)
    return numpy.random.default_rng(seed)
