"""Exact intersection-theory toolkit for threefold geometry data.

Models the intersection ring of a Calabi-Yau threefold over exact rationals,
computes Chern data and twisted Euler characteristics of extension bundles,
searches lattice divisor classes certifying stable extensions for a given
polarization, and tests the anomaly curve class for effectivity.
"""

__version__ = "0.1.0"

from .anomaly import AnomalyVerdict, anomaly_class, anomaly_scan, is_effective
from .catalog import (BUILTIN_NAMES, BaseSurface, build_elliptic,
                      build_octic_k3, builtin, del_pezzo, hirzebruch,
                      load_geometry, save_geometry)
from .chern import (BundleData, ExtensionSpec, euler_characteristic,
                    extension_chern, nonsplit_general, nonsplit_r2,
                    nonsplit_r4, tangent, trivial_line)
from .errors import (CY3Error, DataConsistencyError, GeometryMismatch,
                     GeometryParseError, GeometryValidationError,
                     NotAmpleError, StructuralError)
from .intersection import (CurveClass, DivisorClass, Geometry, LinearForm,
                           Violation, c2_dot, is_ample, pair, product_curve,
                           triple_product, validate_geometry)
from .stability import (CertificateChecks, SearchConfig, StabilityCertificate,
                        check_negativity, check_numerically_nontrivial,
                        check_orthogonal, evaluate_candidate, pairing_row,
                        perturb_polarization, scan_multiples, search,
                        solve_orthogonal)

__all__ = [
    "__version__",
    "AnomalyVerdict", "anomaly_class", "anomaly_scan", "is_effective",
    "BUILTIN_NAMES", "BaseSurface", "build_elliptic", "build_octic_k3",
    "builtin", "del_pezzo", "hirzebruch", "load_geometry", "save_geometry",
    "BundleData", "ExtensionSpec", "euler_characteristic", "extension_chern",
    "nonsplit_general", "nonsplit_r2", "nonsplit_r4", "tangent", "trivial_line",
    "CY3Error", "DataConsistencyError", "GeometryMismatch",
    "GeometryParseError", "GeometryValidationError", "NotAmpleError",
    "StructuralError",
    "CurveClass", "DivisorClass", "Geometry", "LinearForm", "Violation",
    "c2_dot", "is_ample", "pair", "product_curve", "triple_product",
    "validate_geometry",
    "CertificateChecks", "SearchConfig", "StabilityCertificate",
    "check_negativity", "check_numerically_nontrivial", "check_orthogonal",
    "evaluate_candidate", "pairing_row", "perturb_polarization",
    "scan_multiples", "search", "solve_orthogonal",
]
