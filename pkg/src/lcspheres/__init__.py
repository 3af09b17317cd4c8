"""Locally constructible simplicial spheres and balls."""
from .canonical import canonical_key, key_digest
from .collapse import find_collapse_onto_dim, is_collapsible, verify_collapse
from .complex import SimplicialComplex, boundary_complex, cone, suspension
from .lc.certificates import LCCertificate, kT, verify_lc_certificate
from .lc.decide import is_lc
from .sampler import lc_census, lc_upper_bound, sample_lc_closed
from .sphere import verify_ball, verify_sphere

__all__ = [
    "LCCertificate",
    "SimplicialComplex",
    "boundary_complex",
    "canonical_key",
    "cone",
    "find_collapse_onto_dim",
    "is_collapsible",
    "is_lc",
    "kT",
    "key_digest",
    "lc_census",
    "lc_upper_bound",
    "sample_lc_closed",
    "suspension",
    "verify_ball",
    "verify_collapse",
    "verify_lc_certificate",
    "verify_sphere",
]
