"""Command-line front end.

Subcommands: analyze (one state file, full report), random (seeded state-file
ensembles), verify (fast path against the dense brute-force check), esbl
(randomized projection criterion against the purity verdict).

Exit codes: 0 ok, 1 check failed, 2 usage or malformed input, 3 I/O failure,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from .errors import FermisepError, NotADensityMatrixError, ResourceLimitError, StateFormatError
from .oracle import densify, oracle_cap, oracle_rdm, sparsify
from .rdm import compute_rdm, diagonal_decomposition
from .reporting import format_float, render_csv, render_json
from .separability import analyze, esbl_check
from .spectral import eigenvalues
from .states import FermionState, load_state, random_slater, random_state, save_state

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermisep",
        description="Separability analysis for pure states of N identical fermions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one state file and print a report")
    p.add_argument("path", type=Path, help="JSON state file")
    p.add_argument("--tolerance", type=float, default=1e-9, help="verdict tolerance (default 1e-9)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    fmt.add_argument("--csv", action="store_true", help="emit the flat CSV report")
    p.add_argument("--bits", action="store_true", help="also show the entropy in bits (display only)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("random", help="write seeded random state files")
    p.add_argument("--d", type=int, required=True, help="number of orbitals")
    p.add_argument("--n", type=int, required=True, help="number of fermions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slater", action="store_true", help="draw Slater-rank-one states")
    p.add_argument("--count", type=int, default=1, help="number of files (default 1)")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory (default .)")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="cross-check the fast path against the dense oracle")
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--trials", type=int, default=20, help="states per (n, d) cell (default 20)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-corruption", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("esbl", help="randomized projection check vs the purity verdict")
    p.add_argument("path", type=Path, help="JSON state file")
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_esbl)

    return parser


def _analysis_record(path: Path, tolerance: float) -> dict:
    start = time.perf_counter()
    state, input_norm = load_state(path)
    t_load = time.perf_counter()
    rho = compute_rdm(state)
    t_rdm = time.perf_counter()
    report = analyze(state, tolerance=tolerance, rdm=rho)
    spectrum = eigenvalues(rho).values
    t_spectral = time.perf_counter()
    record: dict = {
        "input": str(path),
        "d": state.d,
        "n": state.n,
        "input_norm": input_norm,
    }
    record.update(report.to_dict())
    record["spectrum"] = [float(x) for x in spectrum]
    record["timings"] = {
        "load_ms": (t_load - start) * 1e3,
        "rdm_ms": (t_rdm - t_load) * 1e3,
        "spectral_ms": (t_spectral - t_rdm) * 1e3,
        "total_ms": (time.perf_counter() - start) * 1e3,
    }
    return record


def _print_human(record: dict, bits: bool) -> None:
    v = record["verdicts"]
    n = record["n"]
    print(f"input               {record['input']}")
    print(f"d, n                {record['d']}, {n}")
    print(f"input norm          {format_float(record['input_norm'])}")
    print(f"purity              {format_float(record['purity'])}  (separable value {format_float(1.0 / n)})")
    print(f"entropy             {format_float(record['entropy_nats'])} nats  (ln N = {format_float(math.log(n))})")
    if bits:
        print(f"entropy (bits)      {format_float(record['entropy_nats'] / math.log(2.0))}")
    print(f"e_l                 {format_float(record['e_l'])}")
    print(f"e_vn                {format_float(record['e_vn'])}")
    print(f"idempotency defect  {format_float(record['idempotency_defect'])}")
    print(f"spectrum            {' '.join(format_float(x) for x in record['spectrum'])}")
    print(f"verdicts            purity={v['purity']} entropy={v['entropy']} idempotency={v['idempotency']}")
    result = "separable" if v["separable"] else "entangled"
    print(f"result              {result}  (tolerance {format_float(record['tolerance'])})")


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.tolerance <= 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return EXIT_USAGE
    record = _analysis_record(args.path, args.tolerance)
    if args.json:
        print(render_json(record))
    elif args.csv:
        print(render_csv(record), end="")
    else:
        _print_human(record, args.bits)
    return EXIT_OK


def cmd_random(args: argparse.Namespace) -> int:
    if args.n < 1 or args.d < 1 or args.n > args.d:
        print(f"error: need 1 <= n <= d, got d={args.d}, n={args.n}", file=sys.stderr)
        return EXIT_USAGE
    if args.count < 1:
        print(f"error: --count must be at least 1, got {args.count}", file=sys.stderr)
        return EXIT_USAGE
    args.out.mkdir(parents=True, exist_ok=True)
    kind = "slater" if args.slater else "state"
    for i, child in enumerate(np.random.SeedSequence(args.seed).spawn(args.count)):
        if args.slater:
            state = random_slater(args.d, args.n, child)
        else:
            state = random_state(args.d, args.n, child)
        path = args.out / f"{kind}-d{args.d}-n{args.n}-seed{args.seed}-{i:04d}.json"
        save_state(state, path)
        print(path)
    return EXIT_OK


def _verify_cell(n: int, d: int, trials: int, seed: int, corrupt: bool) -> tuple[dict, list[str]]:
    failures: list[str] = []
    stats = {"oracle": 0.0, "roundtrip": 0.0, "identity": 0.0, "diag": 0.0}

    for trial in range(trials):
        label = f"n={n} d={d} trial={trial} seed={seed}"
        slater = trial % 2 == 1
        maker = random_slater if slater else random_state
        state = maker(d, n, np.random.SeedSequence([seed, n, d, trial]))

        rho = compute_rdm(state)
        dense = densify(state)
        oracle = oracle_rdm(dense)
        dev = float(np.max(np.abs(rho.entries - oracle.entries)))
        stats["oracle"] = max(stats["oracle"], dev)
        if dev > 1e-12:
            failures.append(f"{label}: fast/oracle marginals differ by {dev:.3e}")

        roundtrip = float(np.max(np.abs(sparsify(dense).amplitudes - state.amplitudes)))
        stats["roundtrip"] = max(stats["roundtrip"], roundtrip)
        if roundtrip > 1e-14:
            failures.append(f"{label}: dense round-trip differs by {roundtrip:.3e}")

        report = analyze(state, rdm=rho)
        if report.purity > 1.0 / n + 1e-12:
            failures.append(f"{label}: purity {report.purity!r} above 1/{n}")
        if report.entropy < math.log(n) - 1e-8:
            failures.append(f"{label}: entropy {report.entropy!r} below ln {n}")
        if report.verdict_purity != report.verdict_idempotency:
            failures.append(f"{label}: purity and idempotency verdicts disagree")
        if slater and abs(report.purity - 1.0 / n) > 1e-10:
            failures.append(f"{label}: Slater state purity off by {abs(report.purity - 1 / n):.3e}")

        dec = diagonal_decomposition(state)
        gap = abs(dec.pairwise_identity_gap())
        stats["identity"] = max(stats["identity"], gap)
        if gap > 1e-10:
            failures.append(f"{label}: diagonal decomposition identity gap {gap:.3e}")
        diag_dev = float(np.max(np.abs(dec.diagonal - np.diag(rho.entries).real)))
        stats["diag"] = max(stats["diag"], diag_dev)
        if diag_dev > 1e-12:
            failures.append(f"{label}: decomposition diagonal off by {diag_dev:.3e}")

        if corrupt and trial == 0:
            c = state.amplitudes.copy()
            c[0] = c[0] * (1.0 + 1e-6) if c[0] != 0 else 1e-6
            corrupted = FermionState(state.basis, c)
            dev = float(np.max(np.abs(compute_rdm(corrupted).entries - oracle.entries)))
            if dev > 1e-12:
                failures.append(f"{label}: injected corruption detected ({dev:.3e})")

    return stats, failures


def cmd_verify(args: argparse.Namespace) -> int:
    if args.n_max < 2 or args.d_max < 2 or args.trials < 1:
        print("error: need --n-max >= 2, --d-max >= 2, --trials >= 1", file=sys.stderr)
        return EXIT_USAGE
    cap = oracle_cap()
    if args.d_max**args.n_max > cap:
        print(
            f"error: {args.d_max}^{args.n_max} = {args.d_max ** args.n_max} dense entries "
            f"exceeds the cap {cap}; lower --d-max/--n-max or raise FERMISEP_ORACLE_CAP",
            file=sys.stderr,
        )
        return EXIT_USAGE

    all_failures: list[str] = []
    print(f"{'n':>2} {'d':>3} {'trials':>6} {'max|fast-oracle|':>17} {'max roundtrip':>14} {'max identity gap':>17}")
    for n in range(2, args.n_max + 1):
        for d in range(n, args.d_max + 1):
            stats, failures = _verify_cell(n, d, args.trials, args.seed, args.inject_corruption)
            all_failures.extend(failures)
            flag = "" if not failures else "  FAIL"
            print(
                f"{n:>2} {d:>3} {args.trials:>6} {stats['oracle']:>17.3e} "
                f"{stats['roundtrip']:>14.3e} {stats['identity']:>17.3e}{flag}"
            )

    if all_failures:
        print(f"\n{len(all_failures)} check(s) failed:", file=sys.stderr)
        for line in all_failures:
            print(f"  {line}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print("\nall checks passed")
    return EXIT_OK


def cmd_esbl(args: argparse.Namespace) -> int:
    if args.samples < 1:
        print(f"error: --samples must be at least 1, got {args.samples}", file=sys.stderr)
        return EXIT_USAGE
    state, _ = load_state(args.path)
    if state.n < 2:
        print(f"error: projection check needs n >= 2, got n={state.n}", file=sys.stderr)
        return EXIT_USAGE

    result = esbl_check(state, samples=args.samples, seed=args.seed)
    report = analyze(state)
    print(f"input                {args.path}")
    print(f"projection verdict   {'separable' if result.separable else 'entangled'}")
    print(f"purity verdict       {'separable' if report.separable else 'entangled'}")
    print(f"max residual         {format_float(result.max_residual)}")
    for i, sample in enumerate(result.samples):
        norms = " ".join(format_float(x) for x in sample.projection_norms) or "-"
        kind = "null" if sample.null else ("rank-one" if sample.separable else "rank>1")
        print(f"sample {i:3d}  norms: {norms}  residual: {format_float(sample.residual)}  {kind}")

    if result.separable == report.separable:
        print("verdicts agree")
        return EXIT_OK
    print("verdicts disagree", file=sys.stderr)
    return EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotADensityMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FermisepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
