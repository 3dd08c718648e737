"""
Semichu
=======

Finite Inf semi-lattices as States/Effects Chu spaces over the boolean
domain {Y, N, ⊥}, with the minimal, maximal, regular and Fraser tensor
products, Chu morphisms and executable verification suites.
"""

from .chu_effects import ChuSpace, Effect, natural_effects, reduced_effects
from .exceptions import (CapExceededError, InternalConsistencyError, PreconditionError,
                         SchemaError, SemichuError)
from .fixtures import load_fixture, semilattices_up_to
from .lattice_core import SemiLattice, load_semilattice
from .tensor_products import TensorSpace, TensorTable, tensor_space

__version__ = '0.1.0'
