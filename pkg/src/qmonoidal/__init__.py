"""Quantitative monoidal theories over string diagrams.

Terms are typed string-diagram syntax (:mod:`.diagram`); theories carry
equations, quantitative axiom schemas and a closure (:mod:`.theory`); the
built-in theories evaluate exactly into rational matrices (:mod:`.semantics`),
where distances are computed (:mod:`.distance`); derivations are explicit
certificates checked rule by rule (:mod:`.certify`).  :mod:`.cartesian`
relates quantitative equational logic over cartesian terms to the monoidal
setting.
"""
from .cartesian import (
    CartTheory,
    Op,
    QELCertificate,
    Var,
    associated_monoidal_theory,
    check_qel,
    phi_translate,
    simulate_qel_in_monoidal,
    substitute,
)
from .certify import (
    Certificate,
    CertificateError,
    NotDerivable,
    check,
    dumps_certificate,
    loads_certificate,
    prove_matrix_order,
    prove_tv_column,
    prove_tv_general,
    truth_check,
)
from .diagram import EMPTY, ID, SYM, Gen, Par, Seq, Signature, Term, id_n, sym_mn, typecheck
from .distance import entrywise_leq, semantic_distance, split, tv, tvmax
from .quantale import QuantaleValue, boolean, get_quantale, lawvere
from .semantics import Matrix, equal_in_theory, eval_CA, eval_HA, mat_compose, mat_dsum, model_for
from .syntax import ParseError, parse_term, print_term
from .theory import QuantTheory, builtin_theory, instantiate_schema, load_theory, save_theory

__version__ = "0.1.0"
