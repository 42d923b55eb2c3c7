"""Finite dimensional algebras attached to trees with special leaves, their cells and 2-representations."""

from .algebra import Algebra, BasisElement, Kind, LinComb, NonComposable, build_algebra
from .flor import FlorForm, NotIdempotent, flor_decompose, parse_matrix_file, quasi_idempotent_scalar, verify_flor
from .modules import (Inconclusive, LoewyReport, Module, hom_space, injective_module, is_isomorphic,
                      is_self_injective, loewy_report, projective_module, simple_module, tensor_dim)
from .search import (BudgetExceeded, CandidateRep, CheckReport, SearchBounds, Verdict, XYReport,
                     canonical_form, cell_candidate, check_candidate, classify, search, xy_sets)
from .tree import (TreeInstance, TreeSpecError, emit_tree_spec, parse_tree_spec, path_instance,
                   random_instance, validate)
from .twocat import CellStructure, OneMorphism, cell_rep_matrices, cells, compose, matrix_of

__version__ = "0.1.0"
