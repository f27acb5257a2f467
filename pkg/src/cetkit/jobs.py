"""Job files: declared rings, an ordered list of check stanzas, a seed and limits.

Every stanza yields exactly one CheckReport.  A stanza may carry
``expected_verdict`` (default "holds") so negative controls can live in the
same corpus; a report is *unexpected* when its verdict differs.
"""

from __future__ import annotations

import hashlib
import json
import random
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

from . import cet, linkage, rees
from ._backend import BACKEND
from .complexes import (
    ChainComplex,
    cone_comparison_maps,
    homotopy_defect,
    koszul_complex,
    lift_chain_map,
    mapping_cone,
    power_chain_map,
    resolve_complex,
    scalar_chain_map,
    syzygy_sequences,
)
from .groebner import Ideal, krull_dimension, min_gens_count
from .limits import ComputationTimeout, deadline
from .matrix import Matrix
from .modules import PresentedModule, free_resolution
from .poly import ParseError, QuotientRingSpec, RingError, RingSpec
from .report import CheckReport, timed, verdict

__all__ = ["JobError", "Job", "load_job", "validate_job", "run_job", "determinism_hash", "CHECKS"]


class JobError(ValueError):
    pass


DEFAULT_LIMITS = {"max_degree": 32, "max_tries": 20, "timeout_seconds": 120.0}


@dataclass
class Job:
    rings: dict
    checks: list
    seed: int
    limits: dict = field(default_factory=lambda: dict(DEFAULT_LIMITS))
    source: str = ""

    def base(self, name: str):
        return self.rings[name]


def _build_ring(name: str, spec: dict):
    if not isinstance(spec, dict) or "vars" not in spec:
        raise JobError(f"ring {name!r}: a 'vars' list is required")
    try:
        R = RingSpec(tuple(spec["vars"]), spec.get("field", "QQ"), spec.get("weights"), spec.get("order", "grevlex"))
        ideal = spec.get("ideal") or []
        if ideal:
            return QuotientRingSpec(R, Ideal(R, [R(g) for g in ideal]))
        return R
    except (RingError, ParseError) as e:
        raise JobError(f"ring {name!r}: {e}") from e


def _parse(data: dict, source: str = "") -> Job:
    if not isinstance(data, dict):
        raise JobError("job file must be a JSON object")
    if "seed" not in data:
        raise JobError("missing seed")
    if not isinstance(data["seed"], int) or isinstance(data["seed"], bool):
        raise JobError("seed must be an integer")
    rings_in = data.get("rings")
    if not isinstance(rings_in, dict) or not rings_in:
        raise JobError("'rings' must be a non-empty object")
    checks = data.get("checks")
    if not isinstance(checks, list):
        raise JobError("'checks' must be a list")
    rings = {name: _build_ring(name, spec) for name, spec in rings_in.items()}
    limits = dict(DEFAULT_LIMITS)
    limits.update(data.get("limits") or {})
    for i, st in enumerate(checks):
        if not isinstance(st, dict):
            raise JobError(f"stanza {i}: must be an object")
        kind = st.get("check")
        if kind not in CHECKS:
            raise JobError(f"stanza {i}: unknown check {kind!r}")
        if st.get("ring") not in rings:
            raise JobError(f"stanza {i}: undeclared ring {st.get('ring')!r}")
        for key in CHECKS[kind][0]:
            if key not in st:
                raise JobError(f"stanza {i} ({kind}): missing field {key!r}")
        ev = st.get("expected_verdict", "holds")
        if ev not in ("holds", "fails", "degenerate", "bounded_evidence", "error"):
            raise JobError(f"stanza {i}: bad expected_verdict {ev!r}")
        base = rings[st["ring"]]
        R = base.ambient if isinstance(base, QuotientRingSpec) else base
        for key in _POLY_FIELDS:
            if key in st:
                _parse_polys(R, st[key], i, key)
    return Job(rings, checks, data["seed"], limits, source)


_POLY_FIELDS = ("ideal", "x", "sop", "seq", "c", "a", "b", "h", "y", "gens", "q", "bprime", "element", "p", "targets")


def _parse_polys(R, value, i, key):
    try:
        if isinstance(value, str):
            R(value)
        elif isinstance(value, list):
            for v in value:
                _parse_polys(R, v, i, key)
    except (ParseError, RingError) as e:
        raise JobError(f"stanza {i}: field {key!r}: {e}") from e


def load_job(path: str) -> Job:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise JobError(f"{path}: invalid JSON ({e})") from e
    return _parse(data, path)


def validate_job(path_or_data) -> Job:
    if isinstance(path_or_data, dict):
        return _parse(path_or_data)
    return load_job(path_or_data)


class _Stanza:
    def __init__(self, job: Job, st: dict, seed: int):
        self.job, self.st, self.seed = job, st, seed
        self.base = job.base(st["ring"])
        if isinstance(self.base, QuotientRingSpec):
            self.R, self.I = self.base.ambient, self.base.defining
        else:
            self.R, self.I = self.base, Ideal(self.base, [])

    def __getitem__(self, key):
        return self.st[key]

    def get(self, key, default=None):
        return self.st.get(key, default)

    def poly(self, key):
        return self.R(self.st[key])

    def polys(self, key):
        return [self.R(f) for f in self.st[key]]

    def ideal(self, key):
        return Ideal(self.R, self.polys(key))


def _ideal_strs(I):
    return [str(f) for f in I.gens]


# check implementations: each returns a CheckReport (timing filled by the runner)


def _spoly(f, g):
    (ef, cf), (eg, cg) = f.leading_term(), g.leading_term()
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    R = f.ring
    return f.mul_monomial(tuple(a - b for a, b in zip(lcm, ef)), R.inv(cf)) - g.mul_monomial(
        tuple(a - b for a, b in zip(lcm, eg)), R.inv(cg)
    )


def _chk_groebner(s: _Stanza) -> CheckReport:
    """Buchberger's criterion on the returned basis, plus agreement with a frozen basis if given."""
    I = s.ideal("ideal") + s.I
    gb = I.groebner_basis()
    G = Ideal(I.ring, gb)
    spolys_ok = all(not G.normal_form(_spoly(gb[i], gb[j])) for i in range(len(gb)) for j in range(i + 1, len(gb)))
    gens_ok = all(G.contains(g) for g in I.gens) and all(I.contains(g) for g in gb)
    ok = spolys_ok and gens_ok
    details = {"gb": [str(g) for g in gb], "spolys_reduce_to_zero": spolys_ok, "same_ideal": gens_ok}
    if "expected" in s.st:
        exp = sorted(str(s.R(e).monic()) for e in s["expected"])
        match = exp == sorted(str(g.monic()) for g in gb)
        details["matches_expected"] = match
        ok = ok and match
    return CheckReport("groebner", verdict(ok), [] if ok else [details["gb"]], details)


def _chk_membership(s: _Stanza) -> CheckReport:
    I = s.ideal("ideal") + s.I
    f = s.poly("element")
    nf = I.normal_form(f)
    member = not nf
    ok = member == bool(s.get("member", True))
    return CheckReport("membership", verdict(ok), [] if ok else [str(nf)], {"normal_form": str(nf), "member": member})


def _chk_dimension(s: _Stanza) -> CheckReport:
    d = krull_dimension(s.I)
    ok = d == s["expected"]
    return CheckReport("krull_dimension", verdict(ok), [] if ok else [str(d)], {"dimension": d})


def _chk_min_gens(s: _Stanza) -> CheckReport:
    n = min_gens_count(s.ideal("ideal"))
    ok = n == s["expected"]
    return CheckReport("min_gens_count", verdict(ok), [] if ok else [str(n)], {"count": n})


def _chk_resolution(s: _Stanza) -> CheckReport:
    M = PresentedModule.cyclic(s.base, s.polys("ideal"))
    F = free_resolution(M, s["length"])
    exact = all(F.is_exact_at(i) for i in range(1, F.length))
    minimal = all(not (a and a.is_constant()) for d in F.diffs for r in d.rows for a in r)
    ok = F.is_complex() and exact and minimal
    if "ranks" in s.st:
        ok = ok and F.ranks()[: len(s["ranks"])] == s["ranks"]
    details = {"ranks": F.ranks(), "exact": exact, "minimal": minimal}
    return CheckReport("free_resolution", verdict(ok), [] if ok else [F.ranks()], details)


def _chk_koszul(s: _Stanza) -> CheckReport:
    x = s.polys("x")
    K = koszul_complex(x, s.base)
    nonzero = [i for i in range(1, K.length + 1) if not K.homology(i).is_zero()]
    details = {"ranks": K.ranks(), "nonzero_homology": nonzero}
    if not nonzero:
        return CheckReport("koszul_vanishing", "holds", [], details)
    H = K.homology(nonzero[0])
    return CheckReport("koszul_vanishing", "fails", [[str(a) for a in z] for z in H.generators] or [str(nonzero)], details)


def _chk_regular_sequence(s: _Stanza) -> CheckReport:
    return rees.regular_sequence_check(s.base, s.polys("seq"))


def _chk_mapping_cone(s: _Stanza) -> CheckReport:
    p = s.polys("p")
    y, w = s.poly("y"), s["w"]
    length = s.get("length", s.R.ngens + 1)
    F = free_resolution(PresentedModule.cyclic(s.base, p), length)
    G = mapping_cone(scalar_chain_map(F, y**w))
    exact = [G.is_exact_at(i) for i in range(1, G.length + 1)]
    h0 = Ideal(s.R, list(G.d(1).rows[0]) + list(s.I.gens))
    target = Ideal(s.R, p + [y**w] + list(s.I.gens))
    h0_ok = h0.equals(target)
    ok = G.is_complex() and all(exact) and h0_ok
    details = {"ranks": G.ranks(), "exact": exact, "h0_matches": h0_ok}
    return CheckReport("mapping_cone", verdict(ok), [] if ok else [details], details)


def _chk_cone_comparison(s: _Stanza) -> CheckReport:
    p, y, S_, T_ = s.polys("p"), s.poly("y"), s["s"], s["t"]
    F = free_resolution(PresentedModule.cyclic(s.base, p), s.get("length", s.R.ngens + 1))
    lam_ts, lam_st = cone_comparison_maps(F, y, S_, T_)
    yd = y ** (T_ - S_)
    comp = all(
        (lam_ts[j] @ lam_st[j]).equals(Matrix.diag(s.R, [yd] * lam_st.source.rank(j)), s.base)
        for j in range(lam_st.source.length + 1)
    )
    chain = lam_ts.is_chain_map() and lam_st.is_chain_map()
    seqs = {}
    for i in s.get("degrees", [1, 2]):
        cert = syzygy_sequences(F, y, S_, T_, i)
        seqs[str(i)] = {"ii": cert["ii"]["exact"], "iii": cert["iii"]["exact"]}
    ok = comp and chain and all(v["ii"] and v["iii"] for v in seqs.values())
    details = {"composite_is_power": comp, "chain_maps": chain, "sequences": seqs}
    return CheckReport("cone_comparison", verdict(ok), [] if ok else [details], details)


def _chk_power_map(s: _Stanza) -> CheckReport:
    x, v = s.polys("x"), s["v"]
    phi = power_chain_map(x, v, s.base)
    expected = s.R.one
    for xi, k in zip(x, v):
        expected = expected * xi ** (k - 1)
    top = phi.top()[0, 0]
    ok = phi.is_chain_map() and top == expected
    return CheckReport("power_chain_map", verdict(ok), [] if ok else [str(top)], {"top": str(top), "expected": str(expected)})


def _chk_linkage(s: _Stanza) -> CheckReport:
    T = linkage.link(s.ideal("c") + s.I, s.ideal("a") + s.I)
    if T.degenerate:
        return CheckReport("linkage", "degenerate", [], T.to_dict())
    heights_ok = len(set(T.heights.values())) == 1
    ok = T.unmixed and heights_ok
    return CheckReport("linkage", verdict(ok), [] if ok else [_ideal_strs(T.b)], T.to_dict())


def _chk_canonical(s: _Stanza) -> CheckReport:
    cm = linkage.canonical_module(s.ideal("c"), s.ideal("a"))
    d = cm.to_dict()
    if cm.degenerate:
        return CheckReport("canonical_module", "degenerate", [], d)
    ok = cm.annihilator_matches and cm.double_colon
    if "expect_cyclic" in s.st:
        ok = ok and cm.cyclic == bool(s["expect_cyclic"])
    return CheckReport("canonical_module", verdict(ok), [] if ok else [d["generators"]], d)


def _chk_qg(s: _Stanza) -> CheckReport:
    ok, cert = linkage.is_quasi_gorenstein(s.ideal("c"), s.ideal("b"))
    return CheckReport("quasi_gorenstein", verdict(ok), [] if ok else [cert["omega_generators"]], cert)


def _chk_aci(s: _Stanza) -> CheckReport:
    I = s.ideal("ideal")
    from .groebner import height

    mu, ht = min_gens_count(I), height(I)
    ok = mu == ht + 1
    return CheckReport("almost_complete_intersection", verdict(ok), [] if ok else [f"mu={mu}, height={ht}"], {"mu": mu, "height": ht})


def _chk_dseq(s: _Stanza) -> CheckReport:
    ok, w = linkage.is_d_sequence(s.polys("x"), s.base)
    return CheckReport("d_sequence", verdict(ok), [] if ok else [w], {"witness": w})


def _chk_h1(s: _Stanza) -> CheckReport:
    return linkage.verify_h1_isomorphism(s.ideal("c"), s.poly("h"))


def _chk_generic_link(s: _Stanza) -> CheckReport:
    G = linkage.generic_link(s.ideal("bprime"), s["g"], s.job.limits["max_degree"])
    from .groebner import ideal_quotient

    back = ideal_quotient(G.c, G.aprime)
    round_trip = back.equals(G.bprime)
    from .groebner import height

    heights = {"aprime": height(G.aprime), "bprime": height(G.bprime), "c": len(G.c.gens)}
    ok = G.regular and round_trip and len(set(heights.values())) == 1
    d = {**G.to_dict(), "round_trip": round_trip, "heights": heights, "assumptions": ["a' prime (not certified)"]}
    if s.get("d_sequence_extra"):
        # a_1..a_g followed by the extra generators of a' in the given order
        extra = [f for f in G.aprime.gens if not G.c.contains(f)]
        dseq, w = linkage.is_d_sequence(list(G.c.gens) + extra[:1], G.ring)
        d["d_sequence"] = dseq
        ok = ok and dseq
    return CheckReport("generic_link", verdict(ok), [] if ok else [d], d)


def _chk_regular_element(s: _Stanza) -> CheckReport:
    targets = [Ideal(s.R, [s.R(f) for f in t]) for t in s["targets"]]
    try:
        x, tries = linkage.find_regular_element(targets, s.base, s.job.limits["max_tries"], seed=s.seed)
    except LookupError as e:
        return CheckReport("regular_element", "fails", [str(e)], {})
    return CheckReport("regular_element", "holds", [], {"element": str(x), "tries": tries}, seed_used=s.seed)


def _chk_sym_rees(s: _Stanza) -> CheckReport:
    g = s.polys("gens")
    S = rees.sym_presentation(g, s.R)
    Rr = rees.rees_presentation(g, s.R)
    contained = Rr.ideal.contains_ideal(S.ideal)
    linear = contained and S.ideal.equals(Rr.ideal)
    d = {"sym": _ideal_strs(S.ideal), "rees": _ideal_strs(Rr.ideal), "sym_in_rees": contained, "linear_type": linear,
         "bihomogeneous": S.is_bihomogeneous() and Rr.is_bihomogeneous()}
    ok = contained and d["bihomogeneous"]
    if "expect_linear_type" in s.st:
        ok = ok and linear == bool(s["expect_linear_type"])
    return CheckReport("sym_rees", verdict(ok), [] if ok else [d], d)


def _chk_gr_routes(s: _Stanza) -> CheckReport:
    g = s.polys("gens")
    A = rees.associated_graded_presentation(g, s.R, route="rees")
    B = rees.associated_graded_presentation(g, s.R, route="ext_rees")
    ok = A.ideal.equals(B.ideal.to_ring(A.ring))
    d = {"via_rees": _ideal_strs(A.ideal), "via_ext_rees": _ideal_strs(B.ideal)}
    return CheckReport("associated_graded_routes", verdict(ok), [] if ok else [d], d)


def _chk_dehom(s: _Stanza) -> CheckReport:
    return rees.verify_dehomogenization(s.polys("gens"), s.R)


def _chk_structure_quotient(s: _Stanza) -> CheckReport:
    h = s.poly("h") if "h" in s.st else None
    return rees.verify_structure_quotient(s.polys("gens"), s.R, h)


def _chk_structure_prime(s: _Stanza) -> CheckReport:
    return rees.structure_prime_evidence(s.polys("gens"), s.R, s.get("degree_bound", 4))


def _chk_ext_rees_regular(s: _Stanza) -> CheckReport:
    E = rees.ext_rees_presentation(s.polys("gens"), s.R)
    seq = [E.u] + [E.Z(i) for i in range(len(E.z_names))]
    if s.get("skip_first_z", True):
        seq = [E.u] + [E.Z(i) for i in range(1, len(E.z_names))]
    orders = list(permutations(seq)) if s.get("all_orders") else [tuple(seq)]
    results = {}
    for o in orders:
        r = rees.regular_sequence_check(E, list(o))
        results[" ".join(map(str, o))] = r.verdict
    ok = all(v == "holds" for v in results.values())
    bad = [k for k, v in results.items() if v != "holds"]
    return CheckReport("ext_rees_regular_sequence", verdict(ok), bad, {"orders": results, "ideal": _ideal_strs(E.ideal)})


def _chk_m_complex(s: _Stanza) -> CheckReport:
    return rees.verify_m_complex(s.polys("c"), s.poly("h"), s.R)


def _sop(s: _Stanza):
    return cet.certify_sop(s.base, s.polys("sop"))


def _chk_monomial(s: _Stanza) -> CheckReport:
    return cet.monomial_check(_sop(s), s["t"])


def _chk_ce(s: _Stanza) -> CheckReport:
    return cet.ce_check(_sop(s), s["v"], seed=s.seed if s.get("random_lift") else None)


def _chk_variant(s: _Stanza) -> CheckReport:
    spec = cet.variant_spec(_sop(s), s.polys("q"), s["w"], s["v"])
    return cet.variant_ce_check(spec, seed=s.seed if s.get("random_lift") else None)


def _chk_defect(s: _Stanza) -> CheckReport:
    x = s.polys("x")
    extra = s.polys("resolve") if "resolve" in s.st else list(s.R.gens)
    F = free_resolution(PresentedModule.cyclic(s.base, extra), len(x) + 1)
    K = koszul_complex(x, s.base)
    one = Matrix.identity(s.R, 1)
    phi = lift_chain_map(K, F, one, rng=random.Random(s.seed))
    psi = lift_chain_map(K, F, one, rng=random.Random(s.seed + 1))
    from .modules import LiftingError

    try:
        cert = homotopy_defect(phi, psi, x)
    except LiftingError as e:
        return CheckReport("homotopy_defect", "fails", [str(e)], {})
    d = {"defect": [str(a) for a in cert.defect], "phi_d": [str(a) for a in phi.top().col(0)], "psi_d": [str(a) for a in psi.top().col(0)]}
    return CheckReport("homotopy_defect", "holds", [], d, seed_used=s.seed)


def _chk_resolve(s: _Stanza) -> CheckReport:
    C = koszul_complex(s.polys("x"), s.base)
    r = resolve_complex(C, s.get("ell"))
    d = {
        "s": r.s,
        "ell": r.ell,
        "length": r.length,
        "ranks": r.resolution.ranks(),
        "within_bound": r.within_bound,
        "degreewise_surjective": r.degreewise_surjective,
        "homology_iso": [h["iso"] for h in r.homology_iso],
    }
    ok = r.within_bound and r.degreewise_surjective and r.quasi_isomorphic
    return CheckReport("resolve_complex", verdict(ok), [] if ok else [d], d)


CHECKS: dict[str, tuple[tuple, Callable]] = {
    "groebner": (("ideal",), _chk_groebner),
    "membership": (("ideal", "element"), _chk_membership),
    "krull_dimension": (("expected",), _chk_dimension),
    "min_gens_count": (("ideal", "expected"), _chk_min_gens),
    "free_resolution": (("ideal", "length"), _chk_resolution),
    "koszul_vanishing": (("x",), _chk_koszul),
    "regular_sequence": (("seq",), _chk_regular_sequence),
    "mapping_cone": (("p", "y", "w"), _chk_mapping_cone),
    "cone_comparison": (("p", "y", "s", "t"), _chk_cone_comparison),
    "power_chain_map": (("x", "v"), _chk_power_map),
    "linkage": (("c", "a"), _chk_linkage),
    "canonical_module": (("c", "a"), _chk_canonical),
    "quasi_gorenstein": (("c", "b"), _chk_qg),
    "almost_complete_intersection": (("ideal",), _chk_aci),
    "d_sequence": (("x",), _chk_dseq),
    "h1_isomorphism": (("c", "h"), _chk_h1),
    "generic_link": (("bprime", "g"), _chk_generic_link),
    "regular_element": (("targets",), _chk_regular_element),
    "sym_rees": (("gens",), _chk_sym_rees),
    "associated_graded_routes": (("gens",), _chk_gr_routes),
    "dehomogenization": (("gens",), _chk_dehom),
    "structure_quotient": (("gens",), _chk_structure_quotient),
    "structure_prime": (("gens",), _chk_structure_prime),
    "ext_rees_regular_sequence": (("gens",), _chk_ext_rees_regular),
    "m_complex": (("c", "h"), _chk_m_complex),
    "monomial": (("sop", "t"), _chk_monomial),
    "ce": (("sop", "v"), _chk_ce),
    "variant_ce": (("sop", "q", "w", "v"), _chk_variant),
    "homotopy_defect": (("x",), _chk_defect),
    "resolve_complex": (("x",), _chk_resolve),
}


def _run_stanza(job: Job, index: int, st: dict, seed: int, timeout: float | None) -> dict:
    name = st.get("name") or f"{index}:{st['check']}"
    sseed = seed + index
    with timed() as tm:
        try:
            with deadline(timeout):
                rep = CHECKS[st["check"]][1](_Stanza(job, st, sseed))
        except ComputationTimeout:
            rep = CheckReport(name, "error", [], {"error": f"timeout after {timeout} s"})
        except Exception as e:  # crash isolation: one stanza never aborts the others
            rep = CheckReport(name, "error", [], {"error": f"{type(e).__name__}: {e}", "trace": traceback.format_exc(limit=3).splitlines()[-1]})
    rep.name = name
    rep.timing_ms = tm[0]
    if rep.seed_used is None:
        rep.seed_used = sseed
    out = rep.to_dict()
    out["index"] = index
    out["check"] = st["check"]
    expected = st.get("expected_verdict", "holds")
    out["expected_verdict"] = expected
    out["unexpected"] = rep.verdict != expected
    return out


def determinism_hash(reports: list) -> str:
    stripped = [{k: v for k, v in r.items() if k != "timing_ms"} for r in reports]
    blob = json.dumps(stripped, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def run_job(job: Job, jobs: int = 1, seed: int | None = None, timeout: float | None = None) -> dict:
    """Run every stanza; reports come back in stanza order whatever the completion order."""
    seed = job.seed if seed is None else seed
    timeout = timeout if timeout is not None else job.limits.get("timeout_seconds")
    items = list(enumerate(job.checks))
    if jobs <= 1:
        reports = [_run_stanza(job, i, st, seed, timeout) for i, st in items]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_run_stanza, job, i, st, seed, timeout) for i, st in items]
            reports = [f.result() for f in futs]
    return {
        "job": job.source,
        "seed": seed,
        "backend": BACKEND,
        "reports": reports,
        "determinism_hash": determinism_hash(reports),
        "unexpected": sum(1 for r in reports if r["unexpected"]),
    }
