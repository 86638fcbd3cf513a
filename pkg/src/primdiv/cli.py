"""Command-line front end.

    primdiv check --p -3 --q 2 --n 13
    primdiv verify --p -3 --q 2 --format json --out report.json
    primdiv table1 --format csv
    primdiv table2 --q-max 21
    primdiv scan --q-lo 2 --q-hi 3 --jobs 2
    primdiv convergents --p -3 --q 2 --n-cap 100000
    primdiv gn-cache --n 1260 --cache-dir ~/.cache/primdiv

Exit codes: 0 success / all primitive, 1 no primitive divisor or an
exception found, 2 invalid arguments or pair, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

from . import verifier
from .bounds import PIPELINE_CAP
from .polycache import PolyCache, resolve_dir
from .realcf import MAX_PREC, ConvergentRecord, Verdict, convergent_record, convergents, theta
from .ball import DEFAULT_PREC
from .sequences import (Screen, SequenceError, element, has_primitive_divisor, make_pair,
                        stewart_screen)
from .verifier import ConclusionKind, VerificationReport, VerifyOptions

log = logging.getLogger("primdiv")

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3
CSV_HEADER = ["k", "n", "dreq_log_trunc", "dact_log_trunc"]
FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    command: str
    p: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None
    q_lo: Optional[int] = None
    q_hi: Optional[int] = None
    q_max: int = 21
    n_cap: int = PIPELINE_CAP
    prec_start: int = DEFAULT_PREC
    prec_max: int = MAX_PREC
    jobs: int = 1
    cache_dir: Optional[Path] = None
    out: Optional[Path] = None
    fmt: str = "json"
    timestamp: bool = True

    def __post_init__(self):
        if self.n_cap < 31:
            raise ValueError("--n-cap must be >= 31")
        if not 2 <= self.prec_start <= self.prec_max:
            raise ValueError("need 2 <= --prec-start <= --prec-max")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        if self.fmt not in FORMATS:
            raise ValueError(f"--format must be one of {FORMATS}")

    @property
    def options(self) -> VerifyOptions:
        return VerifyOptions(start_prec=self.prec_start, max_prec=self.prec_max)


# -- serialisation ----------------------------------------------------------

def record_to_dict(rec: ConvergentRecord) -> dict[str, Any]:
    return {"k": rec.k, "n": rec.n,
            "dreq_log_int": rec.dreq_log_int if rec.d_req_log is not None else None,
            "dact_log_1dp": float(rec.dact_log_1dp) if rec.d_act_log is not None else None,
            "margin_ok": rec.verdict is Verdict.REFUTED}


def report_to_dict(rep: VerificationReport) -> dict[str, Any]:
    kind = rep.pair.kind.value if rep.pair.kind is not None else None
    c = rep.conclusion
    return {
        "pair": {"p": rep.pair.p, "q": rep.pair.q, "kind": kind},
        "height": str(rep.height),
        "n_cap": rep.n_cap,
        "n_q": rep.n_q,
        "ranges": [{"lo": r.lo, "hi": r.hi, "method": r.method.value, "outcome": r.outcome.value,
                    "detail": r.detail} for r in rep.ranges],
        "exceptions_up_to_30": list(rep.exceptions_found),
        "convergents": [record_to_dict(r) for r in rep.convergent_rows],
        "conclusion": {"status": c.kind.value, "n": c.n, "reason": c.reason},
    }


def _fmt_1dp(rec: ConvergentRecord) -> str:
    tenths = int(rec.dact_log_1dp * 10)  # already truncated, so this is exact
    sign = "-" if tenths < 0 else ""
    return f"{sign}{abs(tenths) // 10}.{abs(tenths) % 10}"


def rows_csv(rows: Sequence[ConvergentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.k, r.n, r.dreq_log_int, _fmt_1dp(r)])
    return buf.getvalue()


def _text_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def rows_text(rows: Sequence[ConvergentRecord]) -> str:
    return _text_table(CSV_HEADER + ["verdict"],
                       [(r.k, r.n, r.dreq_log_int, _fmt_1dp(r), r.verdict.value) for r in rows])


def _json(obj: Any, cfg: RunConfig) -> str:
    if cfg.timestamp:
        obj = {"generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"), "result": obj}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(text)


def _report_text(rep: VerificationReport) -> str:
    lines = [f"pair (p, q) = ({rep.pair.p}, {rep.pair.q}), {rep.pair.kind.value}; n_q = {rep.n_q}",
             f"n <= 30 without a primitive divisor: {rep.exceptions_found}"]
    lines += [f"  ({r.lo}, {r.hi}]  {r.method.value:<16} {r.outcome.value:<12} {r.detail}" for r in rep.ranges]
    c = rep.conclusion
    lines.append(f"conclusion: {c.kind.value}" + (f" n={c.n}" if c.n else "") + (f" ({c.reason})" if c.reason else ""))
    text = "\n".join(lines) + "\n"
    if rep.convergent_rows:
        text += rows_text(rep.convergent_rows)
    return text


def _exit_for(kinds: Sequence[ConclusionKind]) -> int:
    if ConclusionKind.EXCEPTION in kinds:
        return EXIT_NEGATIVE
    if ConclusionKind.INCONCLUSIVE in kinds:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _warm_cache(cfg: RunConfig, n_hi: int) -> None:
    if cfg.cache_dir is not None:
        loaded = PolyCache(cfg.cache_dir).warm(range(1, n_hi + 1))
        log.info("loaded %d cached polynomials from %s", loaded, cfg.cache_dir)


# -- commands ----------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> int:
    try:
        pair = make_pair(cfg.p, cfg.q)
        if cfg.n < pair.first_index:
            raise ValueError(f"n must be >= {pair.first_index} for a {pair.kind.value} sequence")
    except (SequenceError, ValueError) as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    u = element(pair, cfg.n)
    screen = stewart_screen(pair, cfg.n).value if cfg.n > 12 else "n/a (n <= 12)"
    ok = has_primitive_divisor(pair, cfg.n)
    if screen == Screen.CERTIFIED_PRIMITIVE.value and not ok:
        raise AssertionError("screen and definition disagree")
    digits = len(str(abs(u)))
    show = str(u) if digits <= 60 else f"<{digits} digits>"
    print(f"{pair.kind.value} pair (p, q) = ({pair.p}, {pair.q}), n = {cfg.n}")
    print(f"u_{cfg.n} has {digits} digit{'s' if digits != 1 else ''}")
    print(f"screen: {screen}")
    if ok:
        print(f"primitive divisor exists (u_{cfg.n} = {show})")
        return EXIT_OK
    print(f"no primitive divisor (u_{cfg.n} = {show})")
    return EXIT_NEGATIVE


def cmd_verify(cfg: RunConfig) -> int:
    try:
        make_pair(cfg.p, cfg.q)
    except SequenceError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _warm_cache(cfg, min(verifier.table2_value(cfg.q), cfg.n_cap))
    rep = verifier.verify_pair(cfg.p, cfg.q, cfg.n_cap, cfg.options)
    if cfg.fmt == "json":
        _emit(_json(report_to_dict(rep), cfg), cfg)
    elif cfg.fmt == "csv":
        _emit(rows_csv(rep.convergent_rows), cfg)
    else:
        _emit(_report_text(rep), cfg)
    return _exit_for([rep.conclusion.kind])


def cmd_table1(cfg: RunConfig) -> int:
    rows = verifier.table1(cfg.prec_start)
    if cfg.fmt == "json":
        _emit(_json([record_to_dict(r) for r in rows], cfg), cfg)
    elif cfg.fmt == "csv":
        _emit(rows_csv(rows), cfg)
    else:
        _emit(rows_text(rows), cfg)
    return EXIT_OK if all(r.verdict is Verdict.REFUTED for r in rows) else EXIT_INCONCLUSIVE


def table2_rows(q_max: int) -> list[dict[str, Any]]:
    """Consecutive q with equal n_q grouped; a final n_q = 30 group is open-ended
    because d_req decreases in q."""
    groups: list[dict[str, Any]] = []
    for q in range(2, q_max + 1):
        nq = verifier.compute_nq(q)
        if groups and groups[-1]["n_q"] == nq:
            groups[-1]["q_hi"] = q
        else:
            groups.append({"q_lo": q, "q_hi": q, "n_q": nq})
    if groups and groups[-1]["n_q"] == 30:
        groups[-1]["q_hi"] = None
    for g in groups:
        if g["q_hi"] is None:
            g["label"] = f">={g['q_lo']}"
        elif g["q_hi"] == g["q_lo"]:
            g["label"] = str(g["q_lo"])
        else:
            g["label"] = f"{g['q_lo']}-{g['q_hi']}"
    return groups


def cmd_table2(cfg: RunConfig) -> int:
    rows = table2_rows(cfg.q_max)
    if cfg.fmt == "json":
        _emit(_json(rows, cfg), cfg)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "n_q"])
        w.writerows((g["label"], g["n_q"]) for g in rows)
        _emit(buf.getvalue(), cfg)
    else:
        _emit(_text_table(["q", "n_q"], [(g["label"], g["n_q"]) for g in rows]), cfg)
    return EXIT_OK


def cmd_scan(cfg: RunConfig) -> int:
    if cfg.q_lo is None or cfg.q_hi is None or not 2 <= cfg.q_lo <= cfg.q_hi:
        print("invalid: need 2 <= --q-lo <= --q-hi", file=sys.stderr)
        return EXIT_INVALID
    _warm_cache(cfg, min(verifier.table2_value(cfg.q_lo), cfg.n_cap))
    reports = verifier.scan(cfg.q_lo, cfg.q_hi, cfg.n_cap, cfg.jobs, cfg.options)
    if cfg.fmt == "json":
        _emit(_json([report_to_dict(r) for r in reports], cfg), cfg)
    else:
        rows = [(r.pair.q, r.pair.p, r.n_q, len(r.convergent_rows), r.conclusion.kind.value) for r in reports]
        if cfg.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["q", "p", "n_q", "convergents", "conclusion"])
            w.writerows(rows)
            _emit(buf.getvalue(), cfg)
        else:
            _emit(_text_table(["q", "p", "n_q", "convergents", "conclusion"], rows), cfg)
    return _exit_for([r.conclusion.kind for r in reports])


def cmd_convergents(cfg: RunConfig) -> int:
    try:
        make_pair(cfg.p, cfg.q)
    except SequenceError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    conv = convergents(lambda prec: theta(cfg.p, cfg.q, prec), cfg.n_cap, cfg.prec_start, cfg.prec_max)
    rows = [convergent_record(cfg.p, cfg.q, c.k, c.n, c.partial_quotients_prefix, cfg.prec_start, cfg.prec_max)
            for c in conv if c.n > 30 and c.k >= 1]
    if cfg.fmt == "json":
        _emit(_json([record_to_dict(r) for r in rows], cfg), cfg)
    elif cfg.fmt == "csv":
        _emit(rows_csv(rows), cfg)
    else:
        _emit(rows_text(rows), cfg)
    return EXIT_OK


def cmd_gn_cache(cfg: RunConfig) -> int:
    if cfg.cache_dir is None:
        print("invalid: gn-cache needs --cache-dir or PRIMDIV_CACHE_DIR", file=sys.stderr)
        return EXIT_INVALID
    n_hi = cfg.n if cfg.n is not None else verifier.Q2_CUTOFF
    rebuilt = PolyCache(cfg.cache_dir).build(range(1, n_hi + 1))
    print(f"{cfg.cache_dir}: {n_hi} entries, {len(rebuilt)} written")
    return EXIT_OK


COMMANDS = {"check": cmd_check, "verify": cmd_verify, "table1": cmd_table1, "table2": cmd_table2,
            "scan": cmd_scan, "convergents": cmd_convergents, "gn-cache": cmd_gn_cache}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec-start", type=int, default=DEFAULT_PREC, help="starting precision in bits")
    common.add_argument("--prec-max", type=int, default=MAX_PREC, help="precision cap in bits")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scan")
    common.add_argument("--cache-dir", help="polynomial cache directory (PRIMDIV_CACHE_DIR overrides)")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    common.add_argument("--no-timestamp", action="store_true", help="omit generated_at from JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="primdiv", description="Primitive divisors of Lucas and Lehmer sequences")
    sub = parser.add_subparsers(dest="command", required=True)

    def pq(sp, n=False, cap=False):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        if n:
            sp.add_argument("--n", type=int, required=True)
        if cap:
            sp.add_argument("--n-cap", type=int, default=PIPELINE_CAP)

    pq(sub.add_parser("check", parents=[common], help="test one term for a primitive divisor"), n=True)
    pq(sub.add_parser("verify", parents=[common], help="run the full pipeline for one pair"), cap=True)
    sub.add_parser("table1", parents=[common], help="convergent table for (p, q) = (-3, 2)")
    t2 = sub.add_parser("table2", parents=[common], help="the cut-offs n_q")
    t2.add_argument("--q-max", type=int, default=21)
    sc = sub.add_parser("scan", parents=[common], help="verify every valid pair with q in a range")
    sc.add_argument("--q-lo", type=int, required=True)
    sc.add_argument("--q-hi", type=int, required=True)
    sc.add_argument("--n-cap", type=int, default=PIPELINE_CAP)
    pq(sub.add_parser("convergents", parents=[common], help="convergents of theta with d_act and d_req"), cap=True)
    gc = sub.add_parser("gn-cache", parents=[common], help="build the on-disk polynomial cache")
    gc.add_argument("--n", type=int, default=None, help="largest n to cache (default 1260)")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    get = lambda name, default=None: getattr(ns, name, default)
    return RunConfig(
        command=ns.command, p=get("p"), q=get("q"), n=get("n"), q_lo=get("q_lo"), q_hi=get("q_hi"),
        q_max=get("q_max", 21), n_cap=get("n_cap", PIPELINE_CAP), prec_start=ns.prec_start,
        prec_max=ns.prec_max, jobs=ns.jobs, cache_dir=resolve_dir(ns.cache_dir), out=ns.out,
        fmt=ns.fmt, timestamp=not ns.no_timestamp)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
