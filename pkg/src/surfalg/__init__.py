"""Exact computations with weighted surface algebras and their relatives."""
from .field import GF, QQ, Field, FieldElement, FieldError, FieldSpec, field_make, nth_roots
from .quiver import Quiver, QuiverError, TriangulationQuiver, WeightData, expected_dimension, virtual_arrows
from .presentation import (AlgebraElement, PathAlgebra, Presentation, PresentationError,
                           gabriel_presentation, weighted_surface_relations)
from .rewrite import (CapExceeded, FiniteDimAlgebra, cartan_matrix, idempotent_algebra, normal_form,
                      quotient_algebra, quotient_by_socle, radical_socle, symmetrizing_form)

__version__ = "0.1.0"
