from .analyzer import EggDomainAnalyzer  # noqa
from .automorphism import (CenteringAutomorphism, ball_automorphism,  # noqa
                           centering_automorphism, verify_homogeneous_formula,
                           verify_transformation_rule)
from .cartan_hua import (CartanDomainSpec, HuaBlock, HuaConstructionSpec,  # noqa
                         generic_norm, hua_member, is_member)
from .classifier import (AdmissibilityRegion, ClassificationResult,  # noqa
                         FiberPolynomial, ThresholdReport, ZeroLocus, classify,
                         fiber_polynomial, find_roots, threshold_sweep,
                         zero_locus)
from .coefficients import (EggDomainSpec, KernelCoefficients,  # noqa
                           RealPolynomial, build_P, coefficients_by_closed_form,
                           coefficients_by_recurrence, kernel_coefficients)
from .enums import CartanKind, LuQiKengStatus  # noqa
from .errors import PyLuQiKengError  # noqa
from .kernel import DomainPoint, KernelValue, PointPair, eval_kernel  # noqa
from .monomial import MonomialIndex  # noqa
from .repcoords import (MetricMatrix, RepresentativeMap, metric_matrix,  # noqa
                        representative_coordinates)
from .sampling import MonteCarloEstimate, reproducing_check  # noqa
from .series_oracle import SeriesEvaluation, kernel_series, monomial_norm_sq  # noqa
