from .outcome import StructureOutcome, certificate_bound_check, verify_outcome
from .lambda_cover import cover_via_lambda
from .phi_cover import cover_via_phi

__all__ = ["StructureOutcome", "certificate_bound_check", "verify_outcome", "cover_via_lambda", "cover_via_phi"]
