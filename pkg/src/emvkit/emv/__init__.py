from .axioms import (AltReport, Pomonoid, check_alt_axioms, check_emv_axioms,
                     check_lambda_identities, idempotents, is_full, is_full_subalgebra,
                     is_ideal, is_maximal_ideal, lam, odot, power)
from .backends import DirectSumEMV, FinSetBooleanEMV, FinSuppVector, TableEMV
from .base import EMVAlgebra, Interval, interval_mv
from .unitization import High, Low, UElem, UnitizedMV, unitize

__all__ = ["AltReport", "Pomonoid", "check_alt_axioms", "check_emv_axioms", "check_lambda_identities",
           "idempotents", "is_full", "is_full_subalgebra", "is_ideal", "is_maximal_ideal", "lam", "odot", "power",
           "DirectSumEMV", "FinSetBooleanEMV", "FinSuppVector", "TableEMV", "EMVAlgebra", "Interval",
           "interval_mv", "High", "Low", "UElem", "UnitizedMV", "unitize"]
