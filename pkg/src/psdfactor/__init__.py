"""Real factorization Q(x) = G(x)^T G(x) of positive semidefinite matrix polynomials."""

from .eigenstructure import (JordanBlockDesc, NeutralSubspace, RealJordanData, construct_Y,
                             generic_eigenstructure, solve_X)
from .errors import (ClusterFailure, DefectiveBeyondGeneric, FactorizationError, InputError,
                     NoRegularPoint, NotPositiveDefinite, NotPSD, OddMultiplicity, OddRealBlock,
                     RankMismatch, SingularX1, UnpairedOddBlock)
from .factorizer import (FactorizationOptions, FactorizationReport, assemble_FX, choose_x0,
                         factor_normalized, factorize, normalize, rank_n_factor)
from .matpoly import (MatPoly, coeff_max_diff, det_at, eval_poly, gram, psd_on_grid, reverse,
                      shift_reflect)
from .riccati import (RiccatiData, StructuredPencil, build_pencil, build_riccati_data,
                      graph_check, is_controllable, neutrality_defect, riccati_residual)

__version__ = "0.1.0"
