"""Levi-Civita connections and curvature on the fuzzy sphere."""
from fuzzylc.calculus import (
    FeasibilityError,
    OneForm,
    RepresentationError,
    TensorSquare,
    TwoForm,
    d0,
    d1,
    d_oracle,
    de_oracle,
    junk_space,
    one_form_span_check,
    wedge1,
    wedge_tensor,
)
from fuzzylc.curvature import (
    CurvatureTensor,
    NonCentralRicci,
    curvature,
    evhat,
    ricci,
    scalar_curvature,
)
from fuzzylc.koszul import (
    Connection,
    Metric,
    MetricError,
    levi_civita,
    nabla0_connection,
    torsion_defect,
)
from fuzzylc.linalg import SingularSystem
from fuzzylc.triple import SpectralTriple, build_triple, irrep_su2

__all__ = [
    "Connection",
    "CurvatureTensor",
    "FeasibilityError",
    "Metric",
    "MetricError",
    "NonCentralRicci",
    "OneForm",
    "RepresentationError",
    "SingularSystem",
    "SpectralTriple",
    "TensorSquare",
    "TwoForm",
    "build_triple",
    "curvature",
    "d0",
    "d1",
    "d_oracle",
    "de_oracle",
    "evhat",
    "irrep_su2",
    "junk_space",
    "levi_civita",
    "nabla0_connection",
    "one_form_span_check",
    "ricci",
    "scalar_curvature",
    "torsion_defect",
    "wedge1",
    "wedge_tensor",
]
