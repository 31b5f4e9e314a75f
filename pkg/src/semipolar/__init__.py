"""Semi-inner products, antinorms, normality maps and semi-polar sets.

A smooth strictly convex norm on R^d induces the semi-inner product
``[x, y] = f_y(x)``; a symplectic form turns its norming functionals back
into vectors (the normality map J) and defines the antinorm. Planar
convex bodies get Euclidean polars and left/right semi-polars.
"""

from .antinorm import AntinormNorm, combo_antinorm_bounds, perp_functional, sup_combo_antinorm_lower
from .errors import (ConfigError, DegenerateInput, DimensionMismatch, EmptyInterior, NonSmoothNorm,
                     NotSymplectomorphism, OriginNotInterior, PreconditionFailed, SemipolarError,
                     SingularForm, Unbounded, ZeroVector)
from .geometry import Halfspace, Polygon, convex_hull_2d, halfspace_intersection_2d, hausdorff_2d
from .normality import NormalityMap, forms_equivalent
from .norms import (EllipsoidNorm, LpNorm, NormModel, PComboNorm, ProductNorm, SupComboNorm, euclidean,
                    make_pcombo_norm, make_product_norm)
from .polarity import (EllipsoidBody, NormBall, PolygonBody, StarRegion, ball, euclidean_polar,
                       semipolar_left_point, semipolar_left_set, semipolar_right_point,
                       semipolar_right_set, support_h)
from .report import CheckReport, CheckResult
from .semi_inner import SemiInnerSpace
from .suites import run_suite
from .symplectic import DarbouxBasis, SymplecticForm, darboux_basis

__version__ = "0.1.0"
