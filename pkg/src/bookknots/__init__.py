"""Knotted cycles in the canonical book representation of the complete graph."""

from .braids import BraidWord, braid_closure_diagram, parse_braid, step_cycle_braid, torus_braid
from .census import CensusRecord, enumerate_hamiltonian, run_census, census_series, total_knotted
from .constructions import (composite_cycle, extension_family, insert_vertex, witness_composite,
                            stable_cycle, step_cycle)
from .diagram import (Cycle, Diagram, diagram_of_cycle, dt_code, gauss_code, parse_cycle, pd_code,
                      simplify, writhe)
from .embedding import BookEmbedding, Edge, crosses
from .errors import (BookKnotsError, CapacityError, CheckpointError, DomainError, FixtureError,
                     LinkCaseError, ParseError, PreconditionError)
from .invariants import (Fingerprint, KnotName, alexander_poly, determinant, fingerprint, identify,
                         jones_poly, kauffman_bracket)
from .laurent import LaurentPoly

__version__ = "0.1.0"
