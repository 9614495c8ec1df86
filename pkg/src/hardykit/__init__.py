"""hardykit: numerical certification of Hardy-type inequalities on model
space forms via Riccati pairs.

The toolkit has three layers: closed-form model-space geometry and special
functions (geometry, specfun), the Riccati-pair engine with its expression
language (riccati, exprdsl, catalog), and the quadrature/spectral
validation layer (verifier, spectral).  The cli module ties them together.
"""

__version__ = "0.1.0"

from .catalog import CatalogInstance, instantiate, list_catalog
from .errors import HardykitError
from .exprdsl import ScalarExpr, parse
from .geometry import ModelGeometry
from .riccati import CertificationReport, RiccatiPairSpec, certify, residual
from .spectral import spectral_lambda1
from .verifier import InequalityMargin, additive_margin, multiplicative_margin

__all__ = [
    "__version__",
    "CatalogInstance",
    "CertificationReport",
    "HardykitError",
    "InequalityMargin",
    "ModelGeometry",
    "RiccatiPairSpec",
    "ScalarExpr",
    "additive_margin",
    "certify",
    "instantiate",
    "list_catalog",
    "multiplicative_margin",
    "parse",
    "residual",
    "spectral_lambda1",
]
