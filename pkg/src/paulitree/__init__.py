"""Hamiltonian-aware UCCSD compression and tree-architecture compilation."""

from .architecture import Architecture, build_xtree, get_architecture, grid17q, xtree
from .compress import compress_ansatz, decay_distance, importance_report, parameter_importance, random_compress
from .errors import PauliTreeError, SizeLimitError, ValidationError
from .pauli import Ansatz, Hamiltonian, HamiltonianTerm, ParameterGroup, PauliString, parse_pauli
from .qasm import emit_qasm, parse_qasm
from .routing import Layout, baseline_route, hierarchical_layout, merge_to_root, route_ansatz_baseline
from .synthesis import Circuit, CnotTree, Gate, chain_tree, synthesize, synthesize_ansatz_baseline
from .uccsd import ActiveSpace, generate_uccsd
from .vqe import VqeConfig, VqeResult, bind_parameters, convergence_compare, run_vqe

__version__ = "0.1.0"
