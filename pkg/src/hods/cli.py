"""Command-line entry point: construction, verification, and study pipelines.

Every run is fully determined by its flags (no config files); when an
output file is written, a JSON manifest with the exact argv, seed, version,
and budget goes next to it so the run can be replayed byte-identically.
Floats print with 17 significant digits.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import InvalidInputError, ResourceLimitError, budget_bits
from .gf2core import irreducible_sequence
from .genmat import (
    GeneratingMatrixSet,
    interlaced_niederreiter_set,
    interlaced_t_bound,
    niederreiter_set,
    niederreiter_t_bound,
    zero_set,
)
from .points import (
    PointSet,
    ShiftVector,
    digital_shift,
    net_points,
    propagation_point_set,
    sequence_points,
)
from .duality import (
    dual_elements,
    dual_set_basis,
    exact_t_value,
    minimal_weights,
    verify_order2_net,
)
from .walsh import (
    character_sum,
    delta_walsh_coefficient,
    delta_walsh_midpoint,
    walsh_inner_product,
)
from .discrepancy import (
    STUDY_HEADER,
    StudyRow,
    convergence_study,
    l2_exact,
    lq_discrepancy_bound,
    lq_estimate,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _emit(text: str, args, manifest_extra=None) -> None:
    """Write the payload to --out or stdout; files get a replay manifest."""
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
        manifest = {
            "command": args.command,
            "argv": args._argv,
            "seed": getattr(args, "seed", None),
            "version": __version__,
            "budget_bits": budget_bits(),
            "threads": getattr(args, "threads", 1),
            "output": args.out,
        }
        if manifest_extra:
            manifest.update(manifest_extra)
        with open(args.out + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _build_matrices(args, s: int, rows: int, cols: int) -> GeneratingMatrixSet:
    if getattr(args, "zero_matrices", False):
        return zero_set(s, rows, cols)
    if args.order == 2:
        return interlaced_niederreiter_set(s, rows, cols)
    return niederreiter_set(s, rows, cols)


def _shift_from_seed(hex_seed: str, s: int, precision: int) -> ShiftVector:
    key = int(hex_seed, 16)
    rng = np.random.Generator(np.random.Philox(key=key))
    nums = [
        int.from_bytes(rng.bytes(8), "little") >> (64 - precision) for _ in range(s)
    ]
    return ShiftVector.from_numerators(nums, precision)


def _points_csv(pts: PointSet, fmt: str) -> str:
    lines = []
    if pts.coord1_scale != 1:
        scale = pts.coord1_scale
        lines.append(f"# coord1_scale={scale.numerator}/{scale.denominator}")
    if fmt == "csv-hex":
        header = []
        for j in range(1, pts.s + 1):
            header += [f"x{j}_num", f"x{j}_w"]
        lines.append(",".join(header))
        for row in pts.nums:
            cells = []
            for num in row:
                cells += [hex(num), str(pts.precision)]
            lines.append(",".join(cells))
    else:
        lines.append(",".join(f"x{j}" for j in range(1, pts.s + 1)))
        for n in range(pts.n_points):
            lines.append(",".join(_fmt(float(v)) for v in pts.fractions(n)))
    return "\n".join(lines) + "\n"


def _cmd_gen(args) -> int:
    if args.m is None and args.n_points is None:
        raise InvalidInputError("gen needs --m or --n-points")
    if args.n_points is not None:
        if args.order == 2:
            m = (args.n_points - 1).bit_length()
            gen = interlaced_niederreiter_set(args.s, 2 * m, m)
            pts = propagation_point_set(gen, args.n_points)
        else:
            w = args.precision or 2 * max((args.n_points - 1).bit_length(), 1)
            cols = max(args.n_points - 1, 1).bit_length()
            gen = niederreiter_set(args.s, w, max(cols, 1))
            pts = sequence_points(gen, args.n_points, w)
    else:
        w = args.precision or 2 * args.m
        gen = _build_matrices(args, args.s, w, args.m)
        pts = net_points(gen)
    if args.shift:
        pts = digital_shift(pts, _shift_from_seed(args.shift, pts.s, pts.precision))
    _emit(_points_csv(pts, args.format), args, {"provenance": pts.provenance})
    return EXIT_OK


def _cmd_matrices(args) -> int:
    gen = _build_matrices(args, args.s, args.rows, args.cols)
    blocks = []
    records = []
    for j, mat in enumerate(gen.matrices, start=1):
        if gen.kind == "interlaced":
            src = [2 * (j - 1) + 1, 2 * j]
            polys = [irreducible_sequence(i) for i in src]
            p_txt = ",".join(p.to_hex() for p in polys)
            e_txt = ",".join(str(p.degree) for p in polys)
        else:
            p = irreducible_sequence(j)
            p_txt, e_txt = p.to_hex(), str(p.degree)
        blocks.append(
            f"# j={j} p={p_txt} e={e_txt} rows={gen.rows} cols={gen.cols} kind={gen.kind}\n"
            + mat.to_text()
        )
        records.append(
            {"j": j, "p": p_txt, "e": e_txt, "rows": gen.rows, "cols": gen.cols, "kind": gen.kind}
        )
    _emit("\n\n".join(blocks) + "\n", args, {"matrices": records})
    return EXIT_OK


def _cmd_verify(args) -> int:
    m = args.m
    gen = _build_matrices(args, args.s, 2 * m, m)
    rho1, rho2 = minimal_weights(dual_set_basis(gen))
    t_exact = exact_t_value(gen, args.order)
    if args.order == 2:
        t_bound = min(interlaced_t_bound(args.s), 2 * m)
    else:
        t_bound = min(niederreiter_t_bound(args.s), m)
    if args.t is not None:
        if args.order == 2:
            ok = verify_order2_net(gen, args.t)
            agrees = ok == (rho2 > 2 * m - args.t)
            if not agrees:
                raise AssertionError("row search disagrees with the dual-weight criterion")
        else:
            ok = rho1 > m - args.t
    else:
        ok = t_exact <= t_bound
    line = (
        f"s={args.s} m={m} order={args.order} rho1={rho1} rho2={rho2} "
        f"t_exact={t_exact} t_bound={t_bound} result={'pass' if ok else 'fail'}\n"
    )
    _emit(line, args)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_dual(args) -> int:
    gen = _build_matrices(args, args.s, 2 * args.m, args.m)
    basis = dual_set_basis(gen)
    rho1, rho2 = minimal_weights(basis)
    lines = [
        "s,m,dim,rho1,rho2",
        f"{args.s},{args.m},{basis.dim},{rho1},{rho2}",
        "basis",
    ]
    lines += [hex(v) for v in basis.vectors]
    if args.list_elements:
        lines.append("element," + ",".join(f"k{j}" for j in range(1, args.s + 1)) + ",mu1,mu2")
        for idx, elem in enumerate(dual_elements(basis)):
            lines.append(
                f"{idx}," + ",".join(str(k) for k in elem.k) + f",{elem.mu1},{elem.mu2}"
            )
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK


def _cmd_walsh(args) -> int:
    lines = ["index,value,expected,pass"]
    all_ok = True
    if args.check == "orthogonality":
        for k in range(args.kmax):
            for l in range(args.kmax):
                value = walsh_inner_product(k, l)
                expected = Fraction(1 if k == l else 0)
                ok = value == expected
                all_ok &= ok
                lines.append(f"{k}:{l},{value},{expected},{int(ok)}")
    elif args.check == "character":
        gen = _build_matrices(args, args.s, 2 * args.m, args.m)
        basis = dual_set_basis(gen)
        seen = set()
        for elem in dual_elements(basis):
            seen.add(elem.k)
            value = character_sum(gen, elem.k)
            ok = value == 1
            all_ok &= ok
            lines.append(";".join(map(str, elem.k)) + f",{value},1,{int(ok)}")
        rng = np.random.Generator(np.random.Philox(key=args.seed))
        drawn = 0
        while drawn < args.random_indices:
            k = tuple(int(v) for v in rng.integers(0, 1 << (2 * args.m), size=args.s))
            if k in seen:
                continue
            drawn += 1
            value = character_sum(gen, k)
            ok = value == 0
            all_ok &= ok
            lines.append(";".join(map(str, k)) + f",{value},0,{int(ok)}")
    elif args.check == "delta-coeff":
        gen = _build_matrices(args, args.s, 2 * args.m, args.m)
        pts = net_points(gen)
        resolution = max(pts.precision, args.kmax.bit_length())
        for l in range(args.kmax):
            ls = (l,) + (0,) * (args.s - 1)
            exact = delta_walsh_coefficient(pts, ls)
            oracle = delta_walsh_midpoint(pts, ls, resolution)
            ok = abs(exact - oracle) <= Fraction(1, 1 << resolution)
            all_ok &= ok
            lines.append(";".join(map(str, ls)) + f",{exact},{oracle},{int(ok)}")
    else:
        raise InvalidInputError(f"unknown walsh check {args.check!r}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _cmd_disc(args) -> int:
    if args.n_points is not None:
        gen = interlaced_niederreiter_set(args.s, 2 * (args.n_points - 1).bit_length(),
                                          max((args.n_points - 1).bit_length(), 1))
        pts = propagation_point_set(gen, args.n_points)
        kind = "propagated"
        m = (args.n_points - 1).bit_length()
    else:
        gen = _build_matrices(args, args.s, 2 * args.m, args.m)
        pts = net_points(gen)
        kind = f"order{args.order}"
        m = args.m
    if args.samples:
        value, _ = lq_estimate(pts, args.q, args.samples, args.seed)
    else:
        if args.q != 2:
            raise InvalidInputError("exact evaluation covers q = 2; pass --samples for q > 2")
        value = l2_exact(pts)
    bound = lq_discrepancy_bound(pts.n_points, args.s, args.q)
    row = StudyRow(
        kind, args.s, m, pts.n_points, args.q, value, bound, value / bound, args.seed
    )
    _emit(STUDY_HEADER + "\n" + row.csv() + "\n", args)
    return EXIT_OK


def _cmd_study(args) -> int:
    n_values = None
    if args.n_list:
        n_values = [int(tok) for tok in args.n_list.split(",") if tok]
    rows = convergence_study(
        args.s,
        range(args.m_min, args.m_max + 1),
        args.source,
        q=args.q,
        mc_samples=args.samples,
        seed=args.seed,
        n_values=n_values,
    )
    _emit(STUDY_HEADER + "\n" + "\n".join(r.csv() for r in rows) + "\n", args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hods",
        description="Construct and verify higher-order digital sequences over F2.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--out", help="write output here plus a replay manifest")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; results never depend on it")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate net, sequence, or exact-N points")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n-points", type=int)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--precision", type=int)
    p.add_argument("--shift", help="hex seed for a digital shift vector")
    p.add_argument("--format", choices=("csv-decimal", "csv-hex"), default="csv-decimal")
    p.add_argument("--zero-matrices", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("matrices", help="emit generating matrices as text")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--zero-matrices", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_matrices)

    p = sub.add_parser("verify", help="net-strength report and pass/fail")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--t", type=int)
    p.add_argument("--zero-matrices", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("dual", help="dual-set basis and minimal weights")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--zero-matrices", action="store_true")
    p.add_argument("--list-elements", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("walsh", help="exact Walsh identity checks")
    p.add_argument("--check", required=True,
                   choices=("orthogonality", "character", "delta-coeff"))
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--zero-matrices", action="store_true")
    p.add_argument("--random-indices", type=int, default=1000)
    common(p, seed=True)
    p.set_defaults(func=_cmd_walsh)

    p = sub.add_parser("disc", help="discrepancy of one point set")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n-points", type=int)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--zero-matrices", action="store_true")
    common(p, seed=True)
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("study", help="convergence study as CSV")
    p.add_argument("--source", required=True, choices=("order1", "order2", "propagated"))
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--n-list", help="comma-separated point counts for propagated studies")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--samples", type=int, default=0)
    common(p, seed=True)
    p.set_defaults(func=_cmd_study)

    return parser


def run(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
