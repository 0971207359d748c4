"""Finite and computable EMV-algebras, their morphism families, and checks of their laws."""
from .errors import (BoundExhausted, DomainError, EMVError, InvalidInput, InvalidSize,
                     PreconditionViolation, Unsupported)
from .mv import (FiniteMVAlgebra, MVHom, check_mv_axioms, enumerate_mv_homs, is_mv_hom,
                 mk_boolean, mk_chain, mk_product, natural_order)
from .terms import Neg, One, Oplus, Var, Zero, eval_term, odot as t_odot, vee, wedge
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = ["BoundExhausted", "DomainError", "EMVError", "InvalidInput", "InvalidSize", "PreconditionViolation",
           "Unsupported", "FiniteMVAlgebra", "MVHom", "check_mv_axioms", "enumerate_mv_homs", "is_mv_hom",
           "mk_boolean", "mk_chain", "mk_product", "natural_order", "Neg", "One", "Oplus", "Var", "Zero",
           "eval_term", "t_odot", "vee", "wedge", "Verdict", "__version__"]
