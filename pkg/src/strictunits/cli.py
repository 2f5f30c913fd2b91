"""Command-line front end: every chart and check as a reproducible batch run.

Exit status is 0 when every check in the run passes, 1 when a check fails
(an expected-versus-computed diff goes to stderr), and 2 on usage errors.
Reports go to stdout and depend only on the arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import reference as ref
from .burnside import p2_units_complex, units_complex_homology
from .dl_classify import (
    binom_parity,
    check_identity_anq,
    check_recurrence_a,
    check_recurrence_b,
    enumerate_structures,
)
from .ghm import chart, check_conjecture, format_chain, homology_probe, homotopy_table, postnikov_chart, sq_4i_2i_i_class
from .padic import NotAGenerator, default_generator
from .reprings import j_complex_homology, j_groups, ktheory_complex_check, psi_l_kernel
from .selftest import run_all

__all__ = ["main", "run"]

FORMATS = ("tsv", "json", "grid")


class UsageError(Exception):
    pass


@dataclass
class Report:
    """Output of one subcommand: header, payload and the outcome of its checks."""

    command: str
    config: dict[str, Any]
    claim: str | None = None
    rows: list[tuple] = field(default_factory=list)
    columns: tuple[str, ...] = ()
    data: dict[str, Any] = field(default_factory=dict)
    grid: str | None = None
    diffs: list[str] = field(default_factory=list)
    checked: bool = False

    @property
    def passed(self) -> bool:
        return not self.diffs

    def expect(self, label: str, expected: Any, computed: Any) -> None:
        self.checked = True
        if expected != computed:
            self.diffs.append(f"{label}: expected {expected!r}, computed {computed!r}")

    def render(self, fmt: str) -> str:
        if fmt == "json":
            body = {
                "command": self.command,
                "config": self.config,
                "claim": self.claim,
                "passed": self.passed if self.checked else None,
                "diffs": self.diffs,
                **self.data,
            }
            if self.rows:
                body["rows"] = [dict(zip(self.columns, r)) for r in self.rows]
            return json.dumps(body, indent=2, sort_keys=False) + "\n"
        lines = [f"# command: {self.command}"]
        lines += [f"# {k}: {v}" for k, v in self.config.items()]
        if self.claim:
            lines.append(f"# claim: {self.claim}")
        if self.checked:
            lines.append(f"# result: {'pass' if self.passed else 'FAIL'}")
        if fmt == "grid" and self.grid is not None:
            lines.append(self.grid.rstrip("\n"))
        else:
            if self.columns:
                lines.append("\t".join(self.columns))
            lines += ["\t".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument helpers


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a range like 0..50, got {text!r}") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _window(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    try:
        stems, filts = text.split("x")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a window like -1..10x0..2, got {text!r}") from exc
    return _range(stems), _range(filts)


def _slack(text: str) -> int | None:
    if text == "none":
        return None
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"slack must be an integer or 'none', got {text!r}") from exc


def _primes(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from exc
    for p in out:
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_chart(args: argparse.Namespace) -> Report:
    stems, filts = args.window if args.window else (None, None)
    c = chart(args.truncation, stems, filts, slack=args.slack)
    rep = Report(
        "chart",
        {"truncation": args.truncation, "window": _fmt_window(c.stems, c.filtrations), "slack": args.slack},
        claim=ref.CLAIMS["chart"] if args.truncation == 5 else None,
        columns=("stem", "filtration", "class", "d1_target"),
        rows=c.rows(),
        grid=c.grid(),
    )
    if args.truncation == 5 and args.window is None:
        computed = sorted((a, s, label) for a, s, label, _ in c.rows())
        expected = sorted(ref.CHART_CLASSES)
        missing = sorted(set(computed) - set(expected))
        extra = sorted(set(expected) - set(computed))
        rep.expect("classes absent from the reference", [], missing)
        rep.expect("reference classes not computed", [], extra)
        arrows = sorted((src.label(), format_chain(img)) for src, img in c.arrows())
        rep.expect("d1 arrows", sorted(ref.chart_arrows()), arrows)
    return rep


def _fmt_window(stems: tuple[int, int], filts: tuple[int, int]) -> str:
    return f"{stems[0]}..{stems[1]}x{filts[0]}..{filts[1]}"


def cmd_postnikov(args: argparse.Namespace) -> Report:
    stems = args.window[0] if args.window else None
    c = postnikov_chart(args.truncation, stems)
    return Report(
        "postnikov",
        {"truncation": args.truncation, "window": _fmt_window(c.stems, c.filtrations)},
        columns=("stem", "filtration", "class", "d1_target"),
        rows=c.rows(),
        grid=c.grid(),
    )


def cmd_table(args: argparse.Namespace) -> Report:
    t = homotopy_table(args.n_max, slack=args.slack)
    rep = Report("table", {"n_max": args.n_max, "slack": args.slack}, claim=ref.CLAIMS["table"])
    rep.columns = ("n", "i", "dim", "reference")
    for m in range(1, args.n_max + 1):
        expected = ref.HOMOTOPY_TABLE.get(m)
        for i, d in enumerate(t.dims[m]):
            rep.rows.append((m, i, d, expected[i] if expected else "-"))
        if expected:
            rep.expect(f"dims for n={m}", list(expected), t.dims[m])
            rep.expect(f"collapse certificate for n={m}", True, t.collapse_split[m])
    rep.data["table"] = t.to_json()
    return rep


def cmd_conjecture(args: argparse.Namespace) -> Report:
    rep = Report("conjecture", {"k_max": args.k_max}, claim=ref.CLAIMS["conjecture"])
    rep.columns = ("k", "restricted", "untruncated", "failing_degrees_untruncated")
    reports = []
    for k in range(1, args.k_max + 1):
        r = check_conjecture(k)
        reports.append(r.to_json())
        rep.rows.append((k, r.holds(True), r.holds(False), ",".join(map(str, r.failures(False))) or "-"))
        rep.expect(f"k={k} restricted reading", True, r.holds(True))
    rep.data["reports"] = reports
    return rep


def cmd_probe(args: argparse.Namespace) -> Report:
    rep = Report("probe", {"n": args.n}, claim=ref.CLAIMS["probe"])
    rep.columns = ("n", "monomial", "restricted_nonzero", "untruncated_nonzero")
    out = []
    for n in args.n:
        r = homology_probe(n, monomials=ref.PROBE_CLASSES.get(n, ()))
        out.append(r.to_json())
        for mono, status in r.checks.items():
            rep.rows.append((n, mono, status["restricted_nonzero"], status["untruncated_nonzero"]))
            rep.expect(f"n={n} {mono} nonzero in some reading", True,
                       status["restricted_nonzero"] or status["untruncated_nonzero"])
    for n in args.n:
        if n in ref.PROBE_CLASSES:
            continue
        rep.rows.append((n, "-", "-", "-"))
    rep.data["probes"] = out
    return rep


def cmd_sq4i(args: argparse.Namespace) -> Report:
    rep = Report("sq4i", {"i_max": args.i_max}, claim=ref.CLAIMS["sq4i"])
    rep.columns = ("i", "cycle", "nonzero")
    for i in range(1, args.i_max + 1):
        cyc, nz = sq_4i_2i_i_class(i)
        rep.rows.append((i, cyc, nz))
        rep.expect(f"i={i}", (True, True), (cyc, nz))
    return rep


def cmd_classify(args: argparse.Namespace) -> Report:
    r = enumerate_structures(args.cutoff)
    pats = r.patterns()
    rep = Report("classify-dl", {"cutoff": args.cutoff}, claim=ref.CLAIMS["classify-dl"])
    rep.columns = ("eps", "pattern")
    rep.rows = [("eps=" + s, pats[s]) for s in r.survivors]
    rep.expect("patterns", sorted(ref.DL_PATTERNS), sorted(str(p) for p in pats.values()))
    rep.data["classification"] = r.to_json()
    return rep


def cmd_identity(args: argparse.Namespace) -> Report:
    rep = Report("identity", {"n_max": args.n_max, "q_max": args.q_max}, claim=ref.CLAIMS["identity"])
    bad_a = [(n, q) for n in range(args.n_max + 1) for q in range(1, args.q_max + 1) if not check_identity_anq(n, q)]
    bad_ra = [(n, q) for n in range(3, args.n_max + 1) for q in range(1, args.q_max + 1) if not check_recurrence_a(n, q)]
    bad_rb = [(n, q) for n in range(3, args.n_max + 1) for q in range(1, args.q_max + 1) if not check_recurrence_b(n, q)]
    odd = [q for q in range(0, 201) if binom_parity(3 * q + 2, 2 * q + 1)]
    rep.columns = ("check", "failures")
    rep.rows = [("a(n,q)", len(bad_a)), ("recurrence a", len(bad_ra)), ("recurrence b", len(bad_rb)),
                ("C(3q+2,2q+1) even", len(odd))]
    rep.expect("a(n,q) failures", [], bad_a[:5])
    rep.expect("recurrence a failures", [], bad_ra[:5])
    rep.expect("recurrence b failures", [], bad_rb[:5])
    rep.expect("odd C(3q+2,2q+1)", [], odd[:5])
    return rep


def cmd_burnside(args: argparse.Namespace) -> Report:
    primes = args.prime or [2, 3, 5, 7]
    variants = ["M", "L"] if args.variant == "both" else [args.variant]
    rep = Report("burnside-check", {"primes": primes, "precision": args.precision, "variant": args.variant},
                 claim=ref.CLAIMS["burnside"])
    rep.columns = ("p", "variant", "s", "group", "homology")
    reports = []
    for p in primes:
        N = args.precision if args.precision else (8 if p == 2 else 10)
        by_variant = p2_units_complex(N) if p == 2 else {v: units_complex_homology(p, N, v) for v in variants}
        for v in variants:
            r = by_variant[v]
            reports.append(r.to_json())
            hom = [str(h) for h in r.homology]
            for s, (g, h) in enumerate(zip(r.groups, hom)):
                rep.rows.append((p, v, s, str(g), h))
            table = ref.UNIT_HOMOLOGY_P2 if p == 2 else ref.UNIT_HOMOLOGY_ODD
            expected = [x.replace("Z/p", f"Z/{p}") for x in table[v]]
            rep.expect(f"p={p} {v} homology", expected, hom)
    rep.data["reports"] = reports
    return rep


def cmd_ktheory(args: argparse.Namespace) -> Report:
    primes = args.prime or [3, 5]
    N = args.precision or 10
    rep = Report("ktheory-check", {"primes": primes, "precision": N}, claim=ref.CLAIMS["ktheory"])
    rep.columns = ("p", "ranks_M", "ranks_L", "1", "alpha", "beta", "exact")
    reports = []
    for p in primes:
        r = ktheory_complex_check(p, N)
        reports.append(r.to_json())
        rep.rows.append((p, r.ranks_M, r.ranks_L, r.transfer_images["1"], r.transfer_images["alpha"],
                         r.transfer_images["beta"], r.exact))
        rep.expect(f"p={p} ranks", list(ref.K0_RANKS[:4]), r.ranks_M)
        rep.expect(f"p={p} transfer images", {"1": "1*alpha + 1*beta", "alpha": f"1/{p + 1}*gamma",
                                              "beta": f"-1/{p + 1}*gamma"}, r.transfer_images)
        rep.expect(f"p={p} exact", True, r.exact)
    rep.data["reports"] = reports
    return rep


def cmd_jtheory(args: argparse.Namespace) -> Report:
    primes = args.prime or [3, 5]
    N = args.precision or 10
    lo, hi = args.i_range
    variants = ["M", "L"] if args.variant == "both" else [args.variant]
    rep = Report("jtheory-check", {"primes": primes, "precision": N, "i_range": f"{lo}..{hi}",
                                   "variant": args.variant}, claim=ref.CLAIMS["jtheory"])
    rep.columns = ("p", "l", "variant", "i", "groups", "homology")
    reports = []
    for p in primes:
        l = default_generator(p)
        ranks = [len(psi_l_kernel(s, p, l, N)) for s in range(4 if p == 3 else 3)]
        rep.expect(f"p={p} kernel ranks", [(p**s - 1) // (p - 1) for s in range(len(ranks))], ranks)
        for v in variants:
            for i in range(lo, hi + 1):
                r = j_complex_homology(p, l, N, i, v)
                reports.append(r.to_json())
                rep.rows.append((p, l, v, i, "; ".join(r.groups), "; ".join(r.homology)))
                if i == 0 and v == "M":
                    rep.expect(f"p={p} i=0 homology", ["0", "0", f"Z/{p}", "0"], r.homology)
                elif i > 0:
                    rep.expect(f"p={p} {v} i={i} exact", True, r.exact)
        for i in range(max(lo, 1), hi + 1):
            t = (i + 1) // 2
            if i % 2 == 1 and t % (p - 1) == 0:
                k = _nu(p, t)
                rep.expect(f"p={p} [M(1), Omega^{i} j]", f"Z/{p ** (k + 1)}", str(j_groups(1, i, p, l, N)))
    rep.data["reports"] = reports
    return rep


def _nu(p: int, n: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def cmd_selftest(args: argparse.Namespace) -> Report:
    rep = Report("selftest", {"seed": args.seed})
    rep.columns = ("suite", "cases", "passed")
    results = run_all(args.seed)
    for r in results:
        rep.rows.append((r.name, r.cases, r.passed))
        rep.expect(f"suite {r.name}", [], r.failures)
    rep.data["suites"] = [r.to_json() for r in results]
    return rep


COMMANDS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "chart": cmd_chart,
    "postnikov": cmd_postnikov,
    "table": cmd_table,
    "conjecture": cmd_conjecture,
    "probe": cmd_probe,
    "sq4i": cmd_sq4i,
    "classify-dl": cmd_classify,
    "identity": cmd_identity,
    "burnside-check": cmd_burnside,
    "ktheory-check": cmd_ktheory,
    "jtheory-check": cmd_jtheory,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strictunits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS, default="tsv")
        return p

    p = add("chart", "E_1 page with d_1 for F2[u]/u^{m+1}")
    p.add_argument("--truncation", type=int, default=5)
    p.add_argument("--window", type=_window, default=None, help="stems x filtrations, e.g. -1..10x0..2")
    p.add_argument("--slack", type=_slack, default=None)
    p = add("postnikov", "chart of the Postnikov-style truncation")
    p.add_argument("--truncation", type=int, default=4, help="a power of two")
    p.add_argument("--window", type=_window, default=None)
    p = add("table", "dimensions of pi_i for n <= n-max")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--slack", type=_slack, default=0)
    p = add("conjecture", "vanishing of ker Sq^{8k+1}/im Sq^{4k+1}")
    p.add_argument("--k-max", type=int, default=6)
    p = add("probe", "homology of Sq^{2n+1} modulo Sq^{n+1}")
    p.add_argument("--n", type=int, nargs="+", default=[6, 10, 14])
    p = add("sq4i", "Sq^{4i,2i,i} classes")
    p.add_argument("--i-max", type=int, default=8)
    p = add("classify-dl", "Dyer-Lashof structures on F2[u]")
    p.add_argument("--cutoff", type=int, default=64)
    p = add("identity", "binomial identities and recurrences")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--q-max", type=int, default=40)
    p = add("burnside-check", "homology of unit complexes of Burnside rings")
    p.add_argument("--prime", type=_primes, default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--variant", choices=("M", "L", "both"), default="both")
    p = add("ktheory-check", "K-theory complexes of Steinberg summands")
    p.add_argument("--prime", type=_primes, default=None)
    p.add_argument("--precision", type=int, default=None)
    p = add("jtheory-check", "j-theory complexes of Steinberg summands")
    p.add_argument("--prime", type=_primes, default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--i-range", type=_range, default=(0, 50))
    p.add_argument("--variant", choices=("M", "L", "both"), default="M")
    p = add("selftest", "all property suites")
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, NotAGenerator, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    out.write(report.render(args.format))
    if report.diffs:
        for d in report.diffs:
            print(f"diff: {d}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
