"""Exact computations with pastures, tropical homomorphisms and valuated matroids."""

from .errors import (DomainError, FusionInconclusive, MatroidError, NotAHomomorphism,
                     PresentationError, ResourceLimitError)
from .fields import FiniteField, field_make
from .homs import (PastureMap, enumerate_homs, induced_map_fibers, nullset_contains, parse_map,
                   point_count_profile)
from .matroid import Matroid, builtin, cell_is_matroid, matroid_from_bases, minor, uniform
from .pasture import PasturePresentation, catalog, parse_presentation, unit_group_structure
from .tropical import trop_complex, trop_contains, trop_fiber_dim
from .valuated import (PlueckerVector, check_tropical_pluecker, dressian, hyperplane_fit, is_rigid,
                       lineality_space, regular_subdivision, subdivision_is_matroidal)
from .algebra import associated_algebra, export_cas, variety_points_crosscheck

__version__ = "0.1.0"
