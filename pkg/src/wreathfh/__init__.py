"""Exact arithmetic for the centres of wreath-product group algebras.

The library computes in Z[G wr S_n] and in the interpolating algebra whose
structure constants are integer-valued polynomials in n, together with the
rings of weighted integer-valued polynomials and weighted symmetric functions
it factors through.  Applications: content-evaluation central characters and
p-block classification for symmetric groups and wreath products.
"""

from .errors import (
    DegreeCapExceededError,
    InvalidParameterError,
    NotCentralError,
    ResourceLimitError,
    UnsupportedCharacterFieldError,
    ValidationError,
    WreathFHError,
)
from .groupdata import GroupData, builtin_group, builtin_names, load_group, load_group_file
from .intpoly import IntValuedPoly, interpolate_stable
from .partitions import (
    Multipartition,
    Partition,
    multipartitions_of,
    parse_multipartition,
    parse_partition,
    partitions_of,
)
from .wreathalg import AlgebraElement, CentreElement, WreathEngine

__all__ = [
    "AlgebraElement",
    "CentreElement",
    "DegreeCapExceededError",
    "GroupData",
    "IntValuedPoly",
    "InvalidParameterError",
    "Multipartition",
    "NotCentralError",
    "Partition",
    "ResourceLimitError",
    "UnsupportedCharacterFieldError",
    "ValidationError",
    "WreathEngine",
    "WreathFHError",
    "builtin_group",
    "builtin_names",
    "interpolate_stable",
    "load_group",
    "load_group_file",
    "multipartitions_of",
    "parse_multipartition",
    "parse_partition",
    "partitions_of",
]

__version__ = "0.1.0"
