"""Command line interface: one subcommand per computation, CSV or JSON-lines out.

Exit status: 0 on success, 2 on invalid arguments, 3 when two independent
computations disagree or a verification budget fails, 1 on a failed search.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import arith, charsums, polyfield, sieve, trinomial
from .errors import NotFoundError, VerificationError

log = logging.getLogger("trisieve")

THREADS_ENV = "TRINOMIAL_SIEVE_THREADS"


@dataclass
class RunReport:
    command: str
    parameters: dict
    results: list[dict] = field(default_factory=list)
    measured_constants: dict = field(default_factory=dict)
    wall_time: float = 0.0


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, Fraction):
        return str(v)
    return v


def _jsonable(v):
    if isinstance(v, float):
        return float(f"{v:.12g}")
    if isinstance(v, Fraction):
        return str(v)
    return v


def render(report: RunReport, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "json":
        for row in report.results:
            buf.write(json.dumps({k: _jsonable(v) for k, v in row.items()}) + "\n")
        return buf.getvalue()
    if not report.results:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(report.results[0]), lineterminator="\n")
    writer.writeheader()
    for row in report.results:
        writer.writerow({k: _fmt(v) for k, v in row.items()})
    return buf.getvalue()


def _box(args) -> sieve.Box:
    signed = min(args.C, args.D) < 0
    return sieve.Box(args.C, args.A, args.D, args.B, signed=signed)


# -- subcommands -------------------------------------------------------------------


def cmd_disc(args, rep):
    tri = trinomial.Trinomial(args.n, args.a, args.b)
    closed, oracle = trinomial.discriminant(tri), trinomial.discriminant_resultant(tri)
    if closed != oracle:
        raise VerificationError(f"closed form {closed} != resultant {oracle} for {tri}")
    rep.results.append({"n": args.n, "a": args.a, "b": args.b, "discriminant": closed})


def cmd_disc_unit(args, rep):
    value = trinomial.disc_unit_general(args.n, args.m)
    coeffs = [1] + [0] * args.n
    coeffs[args.n - args.m] += 1
    coeffs[-1] += 1
    oracle = trinomial.poly_discriminant(coeffs)
    if value != oracle:
        raise VerificationError(f"formula {value} != resultant {oracle}")
    rep.results.append({"n": args.n, "m": args.m, "discriminant": value})


def cmd_kappa(args, rep):
    k = trinomial.kappa(args.n)
    rep.results.append({"n": args.n, "kappa": k, "kappa_float": float(k)})


def cmd_irred(args, rep):
    verdict, tier = polyfield.irreducibility_verdict(trinomial.Trinomial(args.n, args.a, args.b))
    rep.results.append({"n": args.n, "a": args.a, "b": args.b, "irreducible": verdict, "tier": tier})


def cmd_irred_modp(args, rep):
    ok = polyfield.is_irreducible_mod_p(args.n, args.a, args.b, args.p)
    rep.results.append({"n": args.n, "a": args.a, "b": args.b, "p": args.p, "irreducible": ok})


def cmd_find_p0(args, rep):
    anchor = polyfield.find_p0(args.n, args.max_prime)
    rep.results.append(
        {"n": args.n, "p0": anchor.p0, "alpha0": anchor.alpha0, "beta0": anchor.beta0}
    )


def cmd_cohen(args, rep):
    worst = 0.0
    for p in args.p:
        count = polyfield.cohen_count(args.n, p, args.threads)
        ratio = abs(count - p * p / args.n) / p**1.5
        worst = max(worst, ratio)
        rep.results.append(
            {"n": args.n, "p": p, "count": count, "main_term": p * p / args.n, "ratio": ratio}
        )
    rep.measured_constants["cohen_max_ratio"] = worst


def cmd_charsum(args, rep):
    spec = charsums.CharSumSpec(args.n, args.m, args.lam, args.mu)
    if len(spec.primes) == 1:
        res, crt = charsums.complete_sum(spec), None
    else:
        res, crt = charsums.composite_sum(spec), charsums.composite_sum_crt(spec)
    row = {
        "n": args.n,
        "m": args.m,
        "lam": spec.lam,
        "mu": spec.mu,
        "re": res.value.real,
        "im": res.value.imag,
        "abs": abs(res.value),
        "ratio": abs(res.value) / args.m,
        "term_count": res.term_count,
    }
    if crt is not None:
        row.update(crt_re=crt.real, crt_im=crt.imag)
    rep.results.append(row)


def cmd_gauss(args, rep):
    for l in args.l:
        g = charsums.gauss_sum(l)
        rep.results.append(
            {"l": l, "re": g.real, "im": g.imag, "abs_minus_sqrt": abs(g) - math.sqrt(l)}
        )


def cmd_boxsum(args, rep):
    box = _box(args)
    value = charsums.incomplete_box_sum(args.n, args.m, box)
    scale = (args.A / args.m + 1) * (args.B / args.m + 1) * args.m * math.log(args.m)
    rep.results.append(
        {"n": args.n, "m": args.m, "C": args.C, "A": args.A, "D": args.D, "B": args.B,
         "value": value, "ratio": abs(value) / scale}
    )


def cmd_sieve_detect(args, rep):
    window = arith.prime_window(args.z)
    stat = sum(arith.kronecker(args.k, p) for p in window.primes)
    rep.results.append(
        {"k": args.k, "z": args.z, "window_size": len(window), "statistic": stat,
         "omega": arith.omega(args.k), "detected": sieve.sieve_detect(args.k, window)}
    )


def cmd_count_pairs(args, rep):
    box = _box(args)
    exact = sieve.t_exact(args.n, box, args.s, args.threads)
    plan = sieve.make_plan(args.n, box, args.s, args.z)
    filtered = sieve.t_sieve_filtered(args.n, box, args.s, plan, args.threads)
    if filtered.count != exact:
        raise VerificationError(f"sieve {filtered.count} != exact {exact}")
    rep.results.append(
        {"n": args.n, "s": args.s, "count": exact, "pairs": filtered.pairs,
         "candidates": filtered.candidates, "pruning_ratio": filtered.pruning_ratio,
         "z": plan.z, "window_size": len(plan.window), "omega_budget": plan.omega_budget}
    )


def cmd_count_fields(args, rep):
    kernels = sieve.field_kernels(args.n, _box(args), args.threads)
    if args.list:
        for s, (a, b, d) in kernels.items():
            rep.results.append({"kernel": s, "a": a, "b": b, "discriminant": d})
    else:
        rep.results.append({"n": args.n, "fields": len(kernels)})


def cmd_qcount(args, rep):
    kernels = sieve.q_kernels(args.n, args.X, args.threads, args.literal)
    for s, (a, b, d) in kernels.items():
        if not (abs(d) <= args.X and d % s == 0 and arith.is_squarefree(s)):
            raise VerificationError(f"kernel {s} fails its self-check")
    if args.list:
        for s, (a, b, d) in kernels.items():
            rep.results.append({"kernel": s, "a": a, "b": b, "discriminant": d})
        return
    q = len(kernels)
    floor = math.ceil(args.X ** (float(trinomial.kappa(args.n)) / 3) / max(math.log(args.X), 1))
    exponent = math.log(q) / math.log(args.X) if q and args.X > 1 else 0.0
    rep.results.append(
        {"n": args.n, "X": args.X, "q_lower_bound": q, "growth_floor": floor,
         "fitted_exponent": exponent}
    )
    rep.measured_constants["q_fitted_exponent"] = exponent


def cmd_progression(args, rep):
    anchor = polyfield.find_p0(args.n)
    avals, bvals = sieve.progression_box(args.n, _box(args))
    for name, vals, res in (("a", avals, anchor.alpha0), ("b", bvals, anchor.beta0)):
        for v in vals:
            rep.results.append({"coordinate": name, "value": v, "p0": anchor.p0, "residue": res})


def _lemma_row(lemma, what, cases, budget, ratio):
    return {"lemma": lemma, "check": what, "cases": cases, "budget": budget,
            "max_ratio": ratio, "status": "PASS" if ratio <= budget else "FAIL"}


def verify_lemmas(n: int, lmax: int) -> RunReport:
    rep = RunReport("verify-lemmas", {"n": n, "lmax": lmax})
    primes = arith.primes_up_to(lmax)

    ls = [l for l in primes if l >= max(n, 3)]
    r1 = max((abs(charsums.complete_sum(charsums.CharSumSpec(n, l)).value) / l for l in ls), default=0.0)
    rep.results.append(_lemma_row("1", "|S_n(l)|/l", len(ls), 4.0, r1))

    ls2 = [l for l in primes if l >= max(n, 7)]
    twists = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    r2 = max(
        (abs(charsums.complete_sum(charsums.CharSumSpec(n, l, a, b)).value) / l
         for l in ls2 for a, b in twists),
        default=0.0,
    )
    rep.results.append(_lemma_row("2", "|S_n(l;lam,mu)|/l", len(ls2) * len(twists), 2.0 * (n + 2), r2))

    small = [3, 5, 7, 11, 13]
    r3, cases3 = 0.0, 0
    for i, l1 in enumerate(small):
        for l2 in small[i + 1 :]:
            for a in range(3):
                for b in range(3):
                    res = charsums.composite_sum(charsums.CharSumSpec(n, l1 * l2, a, b))
                    r3 = max(r3, abs(res.value) / (l1 * l2))
                    cases3 += 1
    rep.results.append(_lemma_row("3", "|S_n(l1*l2;lam,mu)|/m", cases3, 4.0 * 2.0 * (n + 2), r3))

    r4, cases4 = 0.0, 0
    for m in (15, 21, 35, 77):
        for corner in (0, 1000):
            for ext in (m // 2, m, 3 * m):
                box = sieve.Box(corner, ext, corner + 7, ext)
                val = charsums.incomplete_box_sum(n, m, box)
                scale = (ext / m + 1) ** 2 * m * math.log(m)
                r4 = max(r4, abs(val) / scale)
                cases4 += 1
    rep.results.append(_lemma_row("4", "|box sum|/((A/m+1)(B/m+1) m log m)", cases4, 4.0, r4))

    ps = [p for p in primes if 7 <= p <= min(lmax, 101)]
    r5 = max((abs(polyfield.cohen_count(n, p) - p * p / n) / p**1.5 for p in ps), default=0.0)
    rep.results.append(_lemma_row("5", "|cohen - p^2/n|/p^1.5", len(ps), 2.0, r5))

    gs = [l for l in primes if l >= 3]
    rg = max((abs(abs(charsums.gauss_sum(l)) - math.sqrt(l)) for l in gs), default=0.0)
    rep.results.append(_lemma_row("gauss", "||G(l)| - sqrt(l)|", len(gs), 1e-9, rg))

    rep.measured_constants = {f"lemma{r['lemma']}_max_ratio": r["max_ratio"] for r in rep.results}
    return rep


def cmd_verify_lemmas(args, rep):
    out = verify_lemmas(args.n, args.lmax)
    rep.results.extend(out.results)
    rep.measured_constants.update(out.measured_constants)


def cmd_bench(args, rep):
    res = sieve.bench(args.n, _box(args), args.s, args.z, args.threads)
    rep.results.append({"n": args.n, "s": args.s, **res})


# -- parser ------------------------------------------------------------------------


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write results here instead of stdout")
    common.add_argument("--report", help="also write the full run report (JSON) here")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or 1)")

    parser = argparse.ArgumentParser(prog="trisieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def box_args(p):
        p.add_argument("--C", type=float, required=True)
        p.add_argument("--A", type=float, required=True)
        p.add_argument("--D", type=float, required=True)
        p.add_argument("--B", type=float, required=True)

    p = add("disc", cmd_disc, "discriminant of t^n + a t + b, checked by resultant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = add("disc-unit", cmd_disc_unit, "discriminant of t^n + t^m + 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("kappa", cmd_kappa, "1/n + 1/(n-1)")
    p.add_argument("--n", type=int, required=True)

    p = add("irred", cmd_irred, "irreducibility over Q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = add("irred-modp", cmd_irred_modp, "irreducibility over F_p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = add("find-p0", cmd_find_p0, "smallest prime with an irreducible trinomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-prime", type=int, default=10_000)

    p = add("cohen", cmd_cohen, "count irreducible trinomials over F_p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, nargs="+", required=True)

    p = add("charsum", cmd_charsum, "complete character sum modulo l or l1*l2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lam", type=int, default=0)
    p.add_argument("--mu", type=int, default=0)

    p = add("gauss", cmd_gauss, "quadratic Gauss sums")
    p.add_argument("--l", type=int, nargs="+", required=True)

    p = add("boxsum", cmd_boxsum, "Jacobi symbol sum over a box")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    box_args(p)

    p = add("sieve-detect", cmd_sieve_detect, "square-sieve detector on one integer")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", type=float, required=True)

    p = add("count-pairs", cmd_count_pairs, "pairs with Delta = s r^2, exact and sieved")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--z", type=float, default=None)
    box_args(p)

    p = add("count-fields", cmd_count_fields, "distinct quadratic fields over a box")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="one row per kernel")
    box_args(p)

    p = add("qcount", cmd_qcount, "lower bound for Q_n(X)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--literal", action="store_true", help="use the unscaled canonical box")
    p.add_argument("--list", action="store_true", help="one row per kernel")

    p = add("progression", cmd_progression, "residue-class sets giving irreducible trinomials")
    p.add_argument("--n", type=int, required=True)
    box_args(p)

    p = add("verify-lemmas", cmd_verify_lemmas, "empirical budgets for the character sum and Cohen bounds")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--lmax", type=int, default=200)

    p = add("bench", cmd_bench, "time exact vs sieve-filtered pair counting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--z", type=float, default=None)
    box_args(p)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = _default_threads()

    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "command", "format", "out", "report")}
    rep = RunReport(args.command, params)
    start = time.perf_counter()
    try:
        args.func(args, rep)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except NotFoundError as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"invalid argument: {exc}", file=sys.stderr)
        return 2
    rep.wall_time = time.perf_counter() - start
    log.info("%s finished in %.3fs", args.command, rep.wall_time)

    text = render(rep, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(asdict(rep), fh, indent=2, default=_jsonable)
    if any(r.get("status") == "FAIL" for r in rep.results):
        return 3
    return 0


def main() -> None:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    sys.exit(run())


if __name__ == "__main__":
    main()
