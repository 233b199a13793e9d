"""Modules over truncated polynomial Hopf algebras: cohomology, Hochschild action and tensor products."""

from .algebra import AlgebraCtx, Hopf
from .field import FieldCtx, field_create
from .modules import ModuleRep, decompose, is_isomorphic, tensor
from .resolution import CohClass, l_zeta, trivial_resolution

__all__ = ["AlgebraCtx", "Hopf", "FieldCtx", "field_create", "ModuleRep", "decompose",
           "is_isomorphic", "tensor", "CohClass", "l_zeta", "trivial_resolution"]
__version__ = "0.1.0"
