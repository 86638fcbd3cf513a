"""The per-pair pipeline: every n in (30, n_cap] is assigned to one of three
ranges and certified there.

* (30, n_q]: Stewart screen, then the exact definition for the survivors.
* (n_q, 1260]: the right-hand inequality holds, so only convergent
  denominators can be exceptional; those are compared directly.
* (1260, n_cap]: the convergents of theta with d_act compared to d_req.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import arith
from .ball import DEFAULT_PREC, RealBall, Undecidable, cos_2pi_frac, max_ball
from .bounds import PIPELINE_CAP, height_quadratic_pair
from .realcf import (MAX_PREC, ConvergentRecord, PrecisionExhausted, Verdict,
                     convergent_record, convergents, rhs_check, theta)
from .sequences import (Screen, SequenceError, SequencePair, enumerate_exceptions,
                        has_primitive_divisor, make_pair, stewart_screen)

log = logging.getLogger(__name__)

#: n_q as tabulated; q >= 21 all have n_q = 30
TABLE2 = {2: 1260, 3: 330, 4: 210, 5: 120, 6: 90, 7: 78, 8: 66,
          9: 60, 10: 60, 11: 60, **{q: 42 for q in range(12, 21)}}
Q2_CUTOFF = 1260
#: the right-hand inequality is checked term by term up to here; beyond it the
#: analytic argument (valid for n >= 3500) is relied on
TAIL_CHECK_LIMIT = 5000
DIRECT_LIMIT = 5000

TABLE1 = [
    (497, 1291, -116, "-12.6"), (579, 1504, -68, "-13.7"), (1655, 4299, -260, "-15.4"),
    (3889, 10102, -459, "-18.9"), (52212, 135625, -8207, "-22.1"),
    (56101, 145727, -12970, "-22.4"), (108313, 281352, -8086, "-24.3"),
    (381040, 989783, -90228, "-26.1"), (489353, 1271135, -90181, "-26.7"),
    (870393, 2260918, -93683, "-28.3"), (2230139, 5792971, -493472, "-29.5"),
    (3100532, 8053889, -734197, "-30.8"), (8431203, 21900749, -1745895, "-32.3"),
    (11531735, 29954638, -1165244, "-33.1"), (19962938, 51855387, -3104401, "-34.1"),
    (31494673, 81810025, -5404005, "-35.2"), (51457611, 133665412, -5943915, "-35.8"),
    (82952284, 215475437, -19412834, "-38.5"), (798028167, 2072944345, -144472147, "-41.8"),
    (1679008618, 4361364127, -374075698, "-42.8"), (2477036785, 6434308472, -293278284, "-44.3"),
    (6633082188, 17229981071, -1438733756, "-45.4"),
]


def table2_value(q: int) -> int:
    if q < 2:
        raise ValueError("q must be >= 2")
    return TABLE2.get(q, 30)


# -- four-arc product certificate ------------------------------------------

@dataclass
class Lemma10Certificate:
    n: int
    route: str
    card_a: int
    card_b: int
    card_c: int
    card_d: int
    c: tuple[RealBall, RealBall, RealBall, RealBall]
    lhs_max: RealBall
    rhs: RealBall
    passed: bool

    @property
    def cardinalities(self) -> tuple[int, int, int, int]:
        return self.card_a, self.card_b, self.card_c, self.card_d


def _four_sets(n: int) -> tuple[list[int], list[int], list[int], list[int]]:
    a = arith.interval_members(1, 3, 1, 2, n)
    b = arith.interval_members(1, 4, 1, 3, n)
    c = arith.interval_members(1, 6, 1, 4, n)
    d = arith.interval_members(0, 1, 1, 6, n)
    return a, b, c, d


def _c_value(cap: int, js: list[int], shift: int, scale: int, exponent_den: int, n: int, prec: int) -> RealBall:
    # (cap * prod_j (shift + scale*cos(2 pi j/n))^-1)^(1/exponent_den)
    acc = RealBall(cap, prec)
    for j in js:
        acc = acc / (shift + scale * cos_2pi_frac(j, n, prec))
    return acc ** RealBall(Fraction(1, exponent_den), prec)


def _direct_factor(c: RealBall, js: list[int], shift: int, scale: int, n: int, prec: int) -> RealBall:
    acc = RealBall(1, prec)
    for j in js:
        acc = acc * (1 + c / (shift + scale * cos_2pi_frac(j, n, prec)))
    return acc


def lemma10_certify(n: int, precision: int = DEFAULT_PREC, route: str = "auto") -> Lemma10Certificate:
    """Certify the product lower bound for n > 30 via the four-interval split.

    ``route`` is "direct" (the c_i enter the products exactly), "general"
    (c_i < 1 and the products are bounded by powers of 4/3), or "auto",
    which picks direct for n <= 210 and n in {231, 462}.
    """
    if n <= 30:
        raise ValueError("needs n > 30")
    if n > 10 ** 6:
        raise ValueError("enumeration is only feasible for n <= 10^6")
    if route == "auto":
        route = "direct" if n <= 210 or n in (231, 462) else "general"
    prec = precision
    A, B, C, D = _four_sets(n)
    ca = arith.phi_interval(6, 2, n)
    cb = arith.phi_interval(3, 0, n) - arith.phi_interval(4, 0, n)
    cc = arith.phi_interval(4, 0, n) - arith.phi_interval(6, 0, n)
    cd = arith.phi_interval(6, 0, n)
    half = arith.phi(n) // 2
    if (ca, cb, cc, cd) != (len(A), len(B), len(C), len(D)) or ca + cb + cc + cd != half:
        raise ArithmeticError(f"inconsistent interval counts for n={n}")
    cap = arith.stewart_prime_cap(n)
    c1 = _c_value(cap, C + D, 3, 4, half - cc - cd, n, prec)
    c2 = _c_value(cap, D, 1, 4, half - cd, n, prec)
    c3 = _c_value(cap, A, 1, -4, half - ca, n, prec)
    c4 = _c_value(cap, A + B, 3, -4, half - ca - cb, n, prec)
    two = RealBall(2, prec)
    rhs = RealBall(Fraction(5, 3), prec) ** half
    if route == "direct":
        terms = [two ** (ca + cb) * _direct_factor(c1, C + D, 3, 4, n, prec),
                 two ** (cb + cc) * _direct_factor(c2, D, 1, 4, n, prec),
                 two ** (cb + cc) * _direct_factor(c3, A, 1, -4, n, prec),
                 two ** (cc + cd) * _direct_factor(c4, A + B, 3, -4, n, prec)]
        small_c = True
    elif route == "general":
        f = RealBall(Fraction(4, 3), prec)
        terms = [two ** (ca + cb) * f ** (cc + cd), two ** (cb + cc) * f ** cd,
                 two ** (cb + cc) * f ** ca, two ** (cc + cd) * f ** (ca + cb)]
        try:
            small_c = all(c < 1 for c in (c1, c2, c3, c4))
        except Undecidable:
            small_c = False
    else:
        raise ValueError(f"unknown route {route!r}")
    lhs_max = max_ball(*terms)
    try:
        passed = small_c and lhs_max < rhs
    except Undecidable:
        passed = False
    return Lemma10Certificate(n, route, ca, cb, cc, cd, (c1, c2, c3, c4), lhs_max, rhs, passed)


# -- cut-offs ------------------------------------------------------------------

@lru_cache(maxsize=None)
def compute_nq(q: int) -> int:
    """Smallest N >= 30 with the right-hand inequality true for all N < n <= 1260."""
    if q < 2:
        raise ValueError("q must be >= 2")
    nq = 30
    for n in range(Q2_CUTOFF, 30, -1):
        if not rhs_check(q, n):
            nq = n
            break
    if nq > table2_value(q):
        raise RuntimeError(f"computed n_q = {nq} for q = {q} exceeds the tabulated {table2_value(q)}")
    return nq


@lru_cache(maxsize=None)
def tail_rhs_certified(q: int, limit: int = TAIL_CHECK_LIMIT) -> bool:
    """Right-hand inequality for 1260 < n <= limit at q, from q = 2 and monotonicity in q.

    d_req depends on q only through (phi(n)/2) log(5/(3q)), which decreases
    in q because 5/(3q) <= 5/6 exactly.
    """
    if Fraction(5, 3 * q) > Fraction(5, 6):
        return False
    return all(rhs_check(2, n) for n in range(Q2_CUTOFF + 1, limit + 1))


# -- verification report -------------------------------------------------------

class Method(str, enum.Enum):
    DIRECT = "DirectDefinition"
    STEWART = "StewartScreen"
    RHS = "RhsInequality"
    CONVERGENT = "ConvergentCheck"


class Outcome(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class ConclusionKind(str, enum.Enum):
    ALL_PRIMITIVE = "AllPrimitiveAboveThirty"
    EXCEPTION = "ExceptionFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Conclusion:
    kind: ConclusionKind
    n: Optional[int] = None
    reason: Optional[str] = None


@dataclass
class RangeResult:
    lo: int  # exclusive
    hi: int  # inclusive
    method: Method
    outcome: Outcome
    detail: str = ""


@dataclass
class VerificationReport:
    pair: SequencePair
    height: RealBall
    n_cap: int
    n_q: int
    ranges: list[RangeResult] = field(default_factory=list)
    exceptions_found: list[int] = field(default_factory=list)
    convergent_rows: list[ConvergentRecord] = field(default_factory=list)
    conclusion: Conclusion = field(default_factory=lambda: Conclusion(ConclusionKind.INCONCLUSIVE, reason="not run"))

    @property
    def partial(self) -> bool:
        return self.n_cap < PIPELINE_CAP

    def check_partition(self) -> bool:
        edge = 30
        for r in self.ranges:
            if r.lo != edge or r.hi <= r.lo:
                return False
            edge = r.hi
        return edge == self.n_cap


@dataclass
class VerifyOptions:
    start_prec: int = DEFAULT_PREC
    max_prec: int = MAX_PREC
    direct_limit: int = DIRECT_LIMIT


def _resolve(pair: SequencePair, rec: ConvergentRecord, direct_limit: int) -> Outcome:
    """Settle a convergent whose inequality did not refute it."""
    if rec.verdict is Verdict.REFUTED:
        return Outcome.PASS
    if rec.n <= direct_limit:
        return Outcome.PASS if has_primitive_divisor(pair, rec.n) else Outcome.FAIL
    return Outcome.INCONCLUSIVE


def verify_pair(p: int, q: int, n_cap: int = PIPELINE_CAP, options: VerifyOptions | None = None) -> VerificationReport:
    opts = options or VerifyOptions()
    pair = make_pair(p, q)
    if n_cap < 31:
        raise ValueError("n_cap must be >= 31")
    nq = compute_nq(q)
    report = VerificationReport(pair, height_quadratic_pair(p, q, opts.start_prec), n_cap, nq)
    report.exceptions_found = enumerate_exceptions(pair, 2, 30)
    failures: list[int] = []
    inconclusive: list[str] = []

    # (30, n_q]: screen, then the definition
    hi = min(nq, n_cap)
    if hi > 30:
        bad = []
        screened = 0
        for n in range(31, hi + 1):
            if stewart_screen(pair, n) is Screen.CERTIFIED_PRIMITIVE:
                screened += 1
            elif not has_primitive_divisor(pair, n):
                bad.append(n)
        report.ranges.append(RangeResult(
            30, hi, Method.STEWART, Outcome.FAIL if bad else Outcome.PASS,
            f"{screened} screened, {hi - 30 - screened} by definition" + (f"; exceptions {bad}" if bad else "")))
        failures += bad

    # the convergents, shared by the two remaining ranges
    conv: list[ConvergentRecord] = []
    if n_cap > nq:
        try:
            conv = [c for c in convergents(lambda prec: theta(p, q, prec), n_cap, opts.start_prec, opts.max_prec)
                    if c.n > nq]
        except PrecisionExhausted as exc:
            inconclusive.append(str(exc))
    for c in conv:
        rec = convergent_record(p, q, c.k, c.n, c.partial_quotients_prefix, opts.start_prec, opts.max_prec)
        report.convergent_rows.append(rec)

    def check_range(lo: int, hi: int, method: Method, premise_ok: bool, premise: str) -> None:
        rows = [r for r in report.convergent_rows if lo < r.n <= hi]
        outcomes = [(r.n, _resolve(pair, r, opts.direct_limit)) for r in rows]
        bad = [n for n, o in outcomes if o is Outcome.FAIL]
        open_ = [n for n, o in outcomes if o is Outcome.INCONCLUSIVE]
        if bad:
            outcome = Outcome.FAIL
        elif open_ or not premise_ok:
            outcome = Outcome.INCONCLUSIVE
        else:
            outcome = Outcome.PASS
        detail = f"{len(rows)} convergents checked; {premise}"
        if bad:
            detail += f"; exceptions {bad}"
        if open_:
            detail += f"; unresolved {open_}"
        report.ranges.append(RangeResult(lo, hi, method, outcome, detail))
        failures.extend(bad)
        if outcome is Outcome.INCONCLUSIVE:
            inconclusive.append(f"range ({lo}, {hi}]: {detail}")

    # (n_q, 1260]: n_q was computed so the inequality holds on the whole range
    lo, hi = max(nq, 30), min(Q2_CUTOFF, n_cap)
    if hi > lo:
        check_range(lo, hi, Method.RHS, True, f"right-hand inequality certified for all {lo} < n <= {hi}")

    # (1260, n_cap]
    lo, hi = max(Q2_CUTOFF, nq), n_cap
    if hi > lo:
        tail_ok = tail_rhs_certified(q)
        check_range(lo, hi, Method.CONVERGENT, tail_ok,
                    f"right-hand inequality certified to n = {TAIL_CHECK_LIMIT}" if tail_ok
                    else "right-hand inequality not certified")

    if failures:
        report.conclusion = Conclusion(ConclusionKind.EXCEPTION, n=min(failures))
    elif inconclusive:
        report.conclusion = Conclusion(ConclusionKind.INCONCLUSIVE, reason="; ".join(inconclusive))
    elif report.partial:
        report.conclusion = Conclusion(ConclusionKind.INCONCLUSIVE,
                                       reason=f"partial range: n_cap = {n_cap} < {PIPELINE_CAP}")
    else:
        report.conclusion = Conclusion(ConclusionKind.ALL_PRIMITIVE)
    return report


def table1(precision: int = DEFAULT_PREC) -> list[ConvergentRecord]:
    """Convergent rows for (p, q) = (-3, 2) with 1260 < n <= 2e10."""
    conv = convergents(lambda prec: theta(-3, 2, prec), PIPELINE_CAP, precision)
    return [convergent_record(-3, 2, c.k, c.n, c.partial_quotients_prefix, precision)
            for c in conv if c.n > Q2_CUTOFF]


def valid_pairs(q: int) -> list[tuple[int, int]]:
    out = []
    for p in range(-2 * q + 1, 2 * q):
        try:
            make_pair(p, q)
        except SequenceError:
            continue
        out.append((p, q))
    return out


def _failed_report(p: int, q: int, n_cap: int, reason: str) -> VerificationReport:
    pair = SequencePair(p, q, kind=None)  # type: ignore[arg-type]
    rep = VerificationReport(pair, RealBall(0), n_cap, 0)
    rep.conclusion = Conclusion(ConclusionKind.INCONCLUSIVE, reason=reason)
    return rep


def _scan_one(args: tuple[int, int, int, VerifyOptions]) -> VerificationReport:
    p, q, n_cap, opts = args
    try:
        return verify_pair(p, q, n_cap, opts)
    except Exception as exc:  # recorded, never aborts the sweep
        log.warning("pair (%d, %d) failed: %s", p, q, exc)
        return _failed_report(p, q, n_cap, f"{type(exc).__name__}: {exc}")


def scan(q_lo: int, q_hi: int, n_cap: int = PIPELINE_CAP, parallelism: int = 1,
         options: VerifyOptions | None = None) -> list[VerificationReport]:
    """verify_pair over every valid pair with q_lo <= q <= q_hi, sorted by (q, p)."""
    if not 2 <= q_lo <= q_hi:
        raise ValueError("need 2 <= q_lo <= q_hi")
    opts = options or VerifyOptions()
    work = [(p, q, n_cap, opts) for q in range(q_lo, q_hi + 1) for p, _ in valid_pairs(q)]
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            reports = list(pool.map(_scan_one, work, chunksize=4))
    else:
        reports = [_scan_one(w) for w in work]
    return sorted(reports, key=lambda r: (r.pair.q, r.pair.p))
