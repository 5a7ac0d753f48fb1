"""Seeded property suites, shared by the ``selftest`` subcommand and the acceptance tests.

Every experiment returns a :class:`Outcome`; a suite is a list of outcomes.
"""
from __future__ import annotations

import dataclasses
import itertools
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import certify as C
from .cartesian import (
    associated_monoidal_theory,
    check_qel,
    dumps_qel,
    loads_qel,
    phi_translate,
    qel_corpus,
    random_cart_term,
    sample_theory,
    simulate_qel_in_monoidal,
    substitute,
    tuple_term,
)
from .certify import NotDerivable
from .diagram import Seq, canonical_wires, fritz_merge, matrix_term, tensor_all, distribution_term
from .distance import (
    WITNESS_A,
    WITNESS_B,
    WITNESS_C,
    WITNESS_C2,
    entrywise_leq,
    law_checks,
    mix,
    split,
    tv,
    tvmax,
)
from .quantale import get_quantale, ijd_check, integrality_check, product_space, space_from_table
from .samplers import random_nonneg_matrix, random_stochastic_term, smc_axiom_instance
from .semantics import (
    SEMIRINGS,
    Matrix,
    all_matrices,
    equal_in_theory,
    model_for,
    random_distribution,
)
from .theory import SCALAR_GRID, axiom_soundness, builtin_theory


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list, repr=False)

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, str, list]]) -> Outcome:
    t0 = time.perf_counter()
    try:
        ok, detail, failures = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail, failures = False, f"{type(exc).__name__}: {exc}", [exc]
    return Outcome(name, ok, detail, time.perf_counter() - t0, failures)


# -- quantale -------------------------------------------------------------------------


def quantale_laws(name: str, rng: random.Random, samples: int = 200) -> list[str]:
    q = get_quantale(name)
    bad = []
    for _ in range(samples):
        a, b, c = q.sample(rng), q.sample(rng), q.sample(rng)
        if q.tensor(q.tensor(a, b), c) != q.tensor(a, q.tensor(b, c)):
            bad.append(f"associativity at {a}, {b}, {c}")
        if q.tensor(a, b) != q.tensor(b, a):
            bad.append(f"commutativity at {a}, {b}")
        if q.tensor(a, q.unit) != a:
            bad.append(f"unit at {a}")
        if q.leq(a, b) and not q.leq(q.tensor(a, c), q.tensor(b, c)):
            bad.append(f"monotonicity at {a} ⊑ {b}, {c}")
        family = [q.sample(rng) for _ in range(rng.randint(0, 5))]
        if q.tensor(a, q.join(family)) != q.join(q.tensor(a, s) for s in family):
            bad.append(f"join continuity at {a}, {family}")
        if not integrality_check(a, b):
            bad.append(f"integrality at {a}, {b}")
    if not ijd_check(q, rng, samples):
        bad.append("IJD sample check")
    return bad


def product_space_violations(name: str, rng: random.Random, spaces: int = 10) -> list[str]:
    """Random tiny spaces satisfying the axioms, combined both ways; products must satisfy them too."""
    q = get_quantale(name)
    bad = []
    for _ in range(spaces):
        pts_x, pts_y = range(rng.randint(1, 2)), range(rng.randint(1, 2))
        X = _random_space(q, list(pts_x), rng)
        Y = _random_space(q, list(pts_y), rng)
        for mode in ("sum", "max"):
            bad += product_space(X, Y, mode).violations()
    return bad


def _random_space(q, points, rng):
    # distances from a path metric on the points: always reflexive and triangular
    pos = {p: Fraction(rng.randint(0, 4), 2) for p in points}
    if q.name == "lawvere":
        from .quantale import lawvere

        table = {(x, y): lawvere(abs(pos[x] - pos[y])) for x in points for y in points}
    else:
        # an equivalence relation: distance ⊤ inside a class, ⊥ across
        table = {(x, y): q.top if pos[x] == pos[y] else q.bottom for x in points for y in points}
    return space_from_table(q.name, points, table, pseudometric=True)


def suite_quantale(seed: int = 0) -> list[Outcome]:
    rng = random.Random(seed)
    out = []
    for name in ("boolean", "lawvere"):
        out.append(_timed(f"quantale laws ({name}, 200 samples)", lambda n=name: _from_list(quantale_laws(n, rng))))
        out.append(_timed(f"product spaces ({name})", lambda n=name: _from_list(product_space_violations(n, rng))))
    return out


def _from_list(bad: list, ok_detail: str = "0 failures") -> tuple[bool, str, list]:
    return (not bad, ok_detail if not bad else f"{len(bad)} failure(s), first: {bad[0]}", bad)


# -- semantics ------------------------------------------------------------------------


def theory_soundness() -> list[str]:
    bad = []
    for name, ring in (("HA_R", "bool"), ("HA_R", "nonneg"), ("CA", None)):
        th = builtin_theory(name, ring)
        bad += [f"{th.name}/{ring}: {m}" for m in axiom_soundness(th, SCALAR_GRID)]
    return bad


def smc_axioms(rng: random.Random, samples: int = 300) -> list[str]:
    bad = []
    for th in (builtin_theory("HA_R", "nonneg"), builtin_theory("CA")):
        for _ in range(samples):
            name, lhs, rhs = smc_axiom_instance(th, rng)
            if lhs.type != rhs.type or not equal_in_theory(lhs, rhs, th):
                bad.append(f"{th.name} {name}: {lhs} vs {rhs}")
    return bad


def semiring_laws(rng: random.Random, samples: int = 100) -> list[str]:
    bad = []
    for ring in SEMIRINGS.values():
        bad += [f"{ring.name}: {m}" for m in ring.law_violations(rng, samples)]
    return bad


def builder_matrices(max_n: int = 4) -> list[str]:
    ha = builtin_theory("HA_R", "nonneg")
    fm = model_for(ha)
    ca = builtin_theory("CA")
    sm = model_for(ca)
    bad = []
    for n in range(1, max_n + 1):
        for m in range(1, max_n + 1):
            b, w = canonical_wires(n, m, ha.signature)
            eye = [[int(i == j) for j in range(m)] for i in range(m)]
            want_w = Matrix.from_rows([sum((row for _ in range(n)), []) for row in eye]) if m else None
            if fm.eval(w) != want_w:
                bad.append(f"w^{n}_{m}")
            want_b = Matrix(n * m, n, [[int(i // m == j) for j in range(n)] for i in range(n * m)])
            if fm.eval(b) != want_b:
                bad.append(f"b^{n}_{m}")
            cols = [[Fraction(int(i == (j % m))) for i in range(m)] for j in range(n)]
            merged = Seq(tensor_all([distribution_term(c, ca.signature) for c in cols]), fritz_merge(n, m, ca.signature))
            if sm.eval(merged) != Matrix.from_columns(cols, m):
                bad.append(f"p^{n}_{m}")
    return bad


def suite_semantics(seed: int = 0) -> list[Outcome]:
    rng = random.Random(seed)
    return [
        _timed("theory soundness on the scalar grid", lambda: _from_list(theory_soundness())),
        _timed("SMC axioms, 300 instances per model", lambda: _from_list(smc_axioms(rng))),
        _timed("semiring laws", lambda: _from_list(semiring_laws(rng))),
        _timed("canonical wires and merge matrices", lambda: _from_list(builder_matrices())),
    ]


# -- distance --------------------------------------------------------------------------


def tv_agreement(rng: random.Random, samples: int = 300, max_support: int = 6) -> list[str]:
    bad = []
    for _ in range(samples):
        k = rng.randint(1, max_support)
        mu, nu = random_distribution(rng, k), random_distribution(rng, k)
        vals = {meth: tv(mu, nu, meth) for meth in ("sum", "sup", "coupling")}
        if len(set(vals.values())) != 1:
            bad.append(f"{mu} vs {nu}: {vals}")
    return bad


def reference_constants() -> list[str]:
    from .semantics import mat_compose

    bad = []
    if tvmax(WITNESS_C, WITNESS_C2) != Fraction(1, 2):
        bad.append("tvmax(C, C') != 1/2")
    seq = tvmax(mat_compose(WITNESS_C, WITNESS_A), mat_compose(WITNESS_C2, WITNESS_B))
    if seq != Fraction(3, 4):
        bad.append(f"tvmax(C;A, C';B) = {seq}, expected 3/4")
    if not seq > max(tvmax(WITNESS_C, WITNESS_C2), tvmax(WITNESS_A, WITNESS_B)):
        bad.append("meet-sequential bound not violated")
    ca = builtin_theory("CA")
    model = model_for(ca)
    for lam in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        q = ca_tv_instance(lam)
        a, b = model.eval(q.lhs), model.eval(q.rhs)
        if a.column(0) != (lam, 1 - lam, 0) or b.column(0) != (0, 1 - lam, lam):
            bad.append(f"(TV) vectors at λ={lam}: {a.column(0)} / {b.column(0)}")
        if tvmax(a, b) != lam:
            bad.append(f"(TV) distance at λ={lam}: {tvmax(a, b)}")
    return bad


def ca_tv_instance(lam):
    return builtin_theory("BA").instantiate("tv", (lam,))


def tv_axiom_truth() -> list[str]:
    """Every (TV) instance on the grid claims no more than its model distance."""
    ba = builtin_theory("BA")
    bad = []
    for lam in SCALAR_GRID:
        q = ba.instantiate("tv", (lam,))
        if not C.truth_check(q, ba):
            bad.append(f"(TV) at λ={lam} claims {q.eps}")
        d = model_for(ba)
        if tvmax(d.eval(q.lhs), d.eval(q.rhs)) != q.eps.payload:
            bad.append(f"(TV) at λ={lam}: ε={q.eps} but distance {tvmax(d.eval(q.lhs), d.eval(q.rhs))}")
    return bad


def splitting(rng: random.Random, samples: int = 300) -> list[str]:
    bad = []
    for i in range(samples):
        k = rng.randint(1, 5)
        mu = random_distribution(rng, k)
        if i % 10 == 0:
            nu = mu  # λ = 0
        elif i % 10 == 1:
            # disjoint supports: λ = 1
            k = max(k, 2)
            cut = rng.randint(1, k - 1)
            mu = tuple([Fraction(1, cut)] * cut + [Fraction(0)] * (k - cut))
            nu = tuple([Fraction(0)] * cut + [Fraction(1, k - cut)] * (k - cut))
        else:
            nu = random_distribution(rng, k)
        s = split(mu, nu)
        if s.lam != tv(mu, nu):
            bad.append(f"λ ≠ tv for {mu}, {nu}")
        if mix(s.mu_p, s.tau, s.lam) != tuple(mu) or mix(s.nu_p, s.tau, s.lam) != tuple(nu):
            bad.append(f"recombination fails for {mu}, {nu}")
    return bad


def enrichment_laws(rng: random.Random, samples: int = 200) -> list[str]:
    rep = law_checks(rng, samples)
    bad = [f"sequential bound at {v[4]} > {v[5]}" for v in rep.seq_violations]
    bad += [f"direct-sum law: {v[4]} ≠ {v[5]}" for v in rep.dsum_violations]
    if not rep.witness_breaks_meet:
        bad.append("meet witness does not exceed its bound")
    return bad


def suite_distance(seed: int = 0, samples: int = 300) -> list[Outcome]:
    rng = random.Random(seed)
    return [
        _timed(f"tv: sum, sup and coupling agree ({samples} pairs)", lambda: _from_list(tv_agreement(rng, samples))),
        _timed("constants (composite counterexample, (TV) vectors)", lambda: _from_list(reference_constants())),
        _timed("(TV) instances hold in the model", lambda: _from_list(tv_axiom_truth())),
        _timed("enrichment laws on 200 quadruples", lambda: _from_list(enrichment_laws(rng))),
        _timed(f"splitting recombination ({samples} pairs)", lambda: _from_list(splitting(rng, samples))),
    ]


# -- certify -----------------------------------------------------------------------------


@dataclass
class CompletenessReport:
    provable: int = 0
    refused: int = 0
    failures: list = field(default_factory=list)
    certificates: list = field(default_factory=list, repr=False)


def matrix_order_exhaustive(max_dim: int = 3, theory=None, keep: bool = False,
                            pairs=None) -> CompletenessReport:
    """``prove_matrix_order`` succeeds (with an accepted certificate) iff the order holds."""
    theory = theory or builtin_theory("PreOrd_R", "bool")
    rep = CompletenessReport()
    sig = theory.signature
    if pairs is None:
        def gen():
            for rows in range(max_dim + 1):
                for cols in range(max_dim + 1):
                    mats = [(m, matrix_term(m.to_lists(), cols, sig)) for m in all_matrices(rows, cols, (0, 1))]
                    yield from itertools.product(mats, repeat=2)
        pairs = gen()
    else:
        pairs = (((a, matrix_term(a.to_lists(), a.cols, sig)), (b, matrix_term(b.to_lists(), b.cols, sig)))
                 for a, b in pairs)
    for (a, f), (b, g) in pairs:
        want = entrywise_leq(a, b, theory.semiring)
        try:
            cert = C.prove_matrix_order(f, g, theory)
        except NotDerivable:
            rep.refused += 1
            if want:
                rep.failures.append(f"refused a valid pair {a.to_lists()} ≤ {b.to_lists()}")
            continue
        if not want:
            rep.failures.append(f"proved an invalid pair {a.to_lists()} ≤ {b.to_lists()}")
            continue
        eps = C.check(cert, theory)
        if eps != theory.quantale.top:
            rep.failures.append(f"checked ε {eps} for {a.to_lists()}")
        if (cert.lhs, cert.rhs) != (f, g):
            rep.failures.append("certificate concludes a different judgment")
        rep.provable += 1
        if keep:
            rep.certificates.append(cert)
    return rep


def nonneg_order_pairs(rng: random.Random, count: int = 200):
    for i in range(count):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        a = random_nonneg_matrix(rng, rows, cols)
        if i % 2:
            # an upper bound: add nonnegative noise
            b = Matrix(rows, cols, [[a[r, c] + Fraction(rng.randint(0, 2), 2) for c in range(cols)] for r in range(rows)])
        else:
            b = random_nonneg_matrix(rng, rows, cols)
        yield a, b


def tv_completeness(rng: random.Random, samples: int = 200, max_dim: int = 4, keep: bool = False):
    ba = builtin_theory("BA")
    rep = CompletenessReport()
    for _ in range(samples):
        n, m = rng.randint(1, max_dim), rng.randint(1, max_dim)
        f, g = random_stochastic_term(rng, n, m, ba), random_stochastic_term(rng, n, m, ba)
        cert = C.prove_tv_general(f, g, ba)
        eps = C.check(cert, ba)
        want = C.expected_tvmax(f, g)
        if eps.payload != want or (cert.lhs, cert.rhs) != (f, g):
            rep.failures.append(f"ε={eps} vs tvmax {want} for {f} / {g}")
        else:
            rep.provable += 1
        if keep:
            rep.certificates.append(cert)
    return rep


def mutate_below(cert, rng: random.Random, theory):
    """Lower the ε claimed at one node strictly below what its rule concludes, if possible."""
    q = theory.quantale
    nodes = [(p, n) for p, n in cert.nodes() if n.eps != q.bottom]
    rng.shuffle(nodes)
    for path, node in nodes:
        lower = _strictly_better(node.eps, q, rng)
        if lower is not None:
            return cert.replace_at(path, dataclasses.replace(node, eps=lower)), path
    return None, None


def _strictly_better(eps, q, rng):
    """A value strictly above ``eps`` in the quantale order (a stronger claim)."""
    if q.name == "lawvere":
        if eps.payload is None:
            return q.parse(str(rng.randint(0, 3)))
        if eps.payload == 0:
            return None
        return q.parse(str(eps.payload * Fraction(rng.randint(0, 3), 4)))
    return q.top if eps != q.top else None


def mutation_rejection(rng: random.Random, mutations: int = 100, max_dim: int = 4) -> list[str]:
    ba = builtin_theory("BA")
    bad = []
    done = 0
    while done < mutations:
        n, m = rng.randint(1, max_dim), rng.randint(2, max_dim)
        f, g = random_stochastic_term(rng, n, m, ba), random_stochastic_term(rng, n, m, ba)
        cert = C.prove_tv_general(f, g, ba)
        mutant, path = mutate_below(cert, rng, ba)
        if mutant is None:
            continue
        done += 1
        try:
            C.check(mutant, ba)
            bad.append(f"mutation at {path} accepted")
        except C.CertificateError:
            pass
    return bad


def certificate_soundness(certs, theory) -> list[str]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return [f"unsound: {c.tag()} {c.eps}" for c in certs if not C.is_sound(c, theory)]


def random_certificate_soundness(rng: random.Random, count: int = 200) -> list[str]:
    bad = []
    for i in range(count):
        th = builtin_theory("BA") if i % 2 else builtin_theory("PreOrd_R", "nonneg")
        cert = C.random_certificate(th, rng, depth=rng.randint(1, 4))
        try:
            eps = C.check(cert, th)
        except C.CertificateError as exc:
            bad.append(f"random certificate rejected: {exc}")
            continue
        if eps != cert.eps:
            bad.append(f"checked ε {eps} ≠ claimed {cert.eps}")
        bad += certificate_soundness([cert], th)
    return bad


def certificate_roundtrip(rng: random.Random, count: int = 30) -> list[str]:
    ba = builtin_theory("BA")
    bad = []
    for _ in range(count):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        cert = C.prove_tv_general(random_stochastic_term(rng, n, m, ba), random_stochastic_term(rng, n, m, ba), ba)
        if C.loads_certificate(C.dumps_certificate(cert, "BA"), ba) != cert:
            bad.append("text round-trip changed a certificate")
        if C.certificate_from_json(C.certificate_to_json(cert), ba) != cert:
            bad.append("JSON round-trip changed a certificate")
    return bad


def suite_certify(seed: int = 0, quick: bool = True) -> list[Outcome]:
    rng = random.Random(seed)
    dim = 2 if quick else 3
    tv_n = 50 if quick else 200

    def order():
        rep = matrix_order_exhaustive(dim)
        nn = matrix_order_exhaustive(theory=builtin_theory("PreOrd_R", "nonneg"), pairs=nonneg_order_pairs(rng, 50 if quick else 200))
        fails = rep.failures + nn.failures
        return (not fails, f"{rep.provable} proved, {rep.refused} refused; nonneg {nn.provable}/{nn.refused}", fails)

    def tvc():
        rep = tv_completeness(rng, tv_n, keep=True)
        fails = rep.failures + certificate_soundness(rep.certificates, builtin_theory("BA"))
        return (not fails, f"{rep.provable}/{tv_n} certificates at exactly tvmax", fails)

    return [
        _timed(f"matrix order completeness (Boolean ≤ {dim}×{dim})", order),
        _timed("tv completeness and soundness", tvc),
        _timed("ε mutations rejected", lambda: _from_list(mutation_rejection(rng, 30 if quick else 100))),
        _timed("random certificates sound", lambda: _from_list(random_certificate_soundness(rng, 60 if quick else 200))),
        _timed("certificate text/JSON round-trip", lambda: _from_list(certificate_roundtrip(rng, 10))),
    ]


# -- cartesian -------------------------------------------------------------------------------


def simulation_corpus(seed: int = 0, count: int = 50) -> list[str]:
    theory = sample_theory()
    mono = associated_monoidal_theory(theory)
    bad = []
    for i, cert in enumerate(qel_corpus(theory, count, seed)):
        eps = check_qel(cert, theory)
        _, mc = simulate_qel_in_monoidal(cert, theory, mono)
        got = C.check(mc, mono)
        if got != eps:
            bad.append(f"corpus[{i}]: QEL ε {eps}, monoidal ε {got}")
        if (mc.lhs, mc.rhs) != (phi_translate(cert.lhs, cert.ctx, mono.signature),
                                phi_translate(cert.rhs, cert.ctx, mono.signature)):
            bad.append(f"corpus[{i}]: simulated judgment is not the translation")
        if loads_qel(dumps_qel(cert), theory) != cert:
            bad.append(f"corpus[{i}]: text round-trip")
    return bad


def phi_properties(rng: random.Random, samples: int = 200) -> list[str]:
    theory = sample_theory()
    mono = associated_monoidal_theory(theory)
    sig = mono.signature
    bad = []
    for _ in range(samples):
        k, n = rng.randint(1, 3), rng.randint(1, 3)
        t = random_cart_term(theory, rng, k, 3)
        sigma = [random_cart_term(theory, rng, n, 2) for _ in range(k)]
        d = phi_translate(t, k, sig)
        if d.type != (k, 1):
            bad.append(f"Φ({t}) has type {d.type} in context {k}")
        lhs = phi_translate(substitute(t, sigma), n, sig)
        rhs = Seq(tuple_term(sigma, n, sig), d)
        if not equal_in_theory(lhs, rhs, mono):
            bad.append(f"Φ({t}[σ]) ≠ tuple(σ) ; Φ({t})")
    return bad


def suite_cartesian(seed: int = 0) -> list[Outcome]:
    rng = random.Random(seed)
    return [
        _timed("simulation preserves ε on a 50-proof corpus", lambda: _from_list(simulation_corpus(seed))),
        _timed("Φ typing and substitution", lambda: _from_list(phi_properties(rng))),
    ]


SUITES = {
    "quantale": suite_quantale,
    "semantics": suite_semantics,
    "distance": suite_distance,
    "certify": suite_certify,
    "cartesian": suite_cartesian,
}


def run(scope: str = "all", seed: int = 0) -> dict[str, list[Outcome]]:
    names = list(SUITES) if scope == "all" else [scope]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)} or all")
    return {n: SUITES[n](seed) for n in names}
