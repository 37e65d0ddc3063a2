"""Exact computation and verification of local submodule and ideal zeta
functions of nilpotent algebras of endomorphisms."""

from .ratfun import RatFun2
from .intlinalg import IntMat
from .algebras import EndoSetup, LieLattice, centralizer_series, check_condition
from .catalog import by_name

__version__ = "0.1.0"
