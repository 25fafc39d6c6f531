"""Unified command-line front end.

One subcommand per analysis; all outputs are deterministic given the same
configuration.  ``--out`` takes an output format (csv, json, dot) written to
stdout, or a file path whose extension picks the format.  Exit codes:
0 success, 1 invalid configuration, 2 insufficient depth/data,
3 uncertified result, 4 budget exceeded.
"""

import argparse
import os
import sys
from fractions import Fraction

from . import errors
from .language import (
    build_table,
    complexity_profile,
    rauzy_graph,
    sft_table,
    special_words,
    stability_check,
)
from .recover import recover_structure
from .sadic import (
    commutation_diff_count,
    derived_lengths,
    derived_words,
    shift_diff_density,
    syndetic_set,
    unique_decompose,
    validate_params,
)
from .serialize import (
    dump_report,
    load_params,
    load_params_or_sft,
    load_symbols,
    report_envelope,
    save_params,
)
from .spectrum import eigenvalue, length_sequences, weyl_probe
from .substitution import DEFAULT_BUDGET, generate_prefix, generate_word
from .weakmix import ExampleConfig, build_example, landmark_complexities
from .words import max_common_suffix_periodic, render, word


def _threads() -> int:
    """Worker cap from SUBSHIFT_LAB_THREADS; execution is sequential either
    way, the value is just validated and echoed in reports."""
    raw = os.environ.get("SUBSHIFT_LAB_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise errors.InvalidArgumentError(f"SUBSHIFT_LAB_THREADS={raw!r} is not an integer")
    if val < 1:
        raise errors.InvalidArgumentError("SUBSHIFT_LAB_THREADS must be >= 1")
    return val


def _emit(text: str, out: str, default_fmt: str, allowed):
    """Write ``text`` to stdout (when out is a bare format) or to a path."""
    fmt = out if out in ("csv", "json", "dot") else os.path.splitext(out)[1].lstrip(".").lower()
    if fmt not in allowed:
        raise errors.InvalidArgumentError(
            f"output format {fmt or default_fmt!r} not supported here (allowed: {sorted(allowed)})"
        )
    if out in ("csv", "json", "dot"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _validated_table(params, level, nmax, budget):
    w1 = generate_word(params.pi, params.pairs, level, budget)
    w2 = generate_word(params.pi, params.pairs, level + 1, budget)
    t1 = build_table(w1, nmax)
    t2 = build_table(w2, nmax)
    return stability_check(t1, t2)


def _cmd_complexity(args):
    params = load_params(args.params)
    table = _validated_table(params, args.level, args.nmax, args.max_symbols)
    prof = complexity_profile(table)
    lines = ["n,p"]
    lines += [f"{n + 1},{p}" for n, p in enumerate(prof.p)]
    _emit("\n".join(lines) + "\n", args.out, "csv", {"csv"})
    return 0


def _table_for(args, nmax):
    kind, payload = load_params_or_sft(args.params)
    if kind == "sft":
        alphabet, forbidden = payload
        return sft_table(alphabet, forbidden, nmax)
    if args.level is None:
        raise errors.InvalidArgumentError("--level is required for generator params")
    return _validated_table(payload, args.level, nmax, args.max_symbols)


def _cmd_rauzy(args):
    table = _table_for(args, args.n + 1)
    graph = rauzy_graph(table, args.n)
    _emit(graph.to_dot() + "\n", args.out, "dot", {"dot"})
    return 0


def _cmd_special(args):
    table = _table_for(args, args.n + 1)
    rep = special_words(table, args.n)
    data = {
        "n": rep.n,
        "right_special": [
            {"word": render(w), "followers": sorted(f)} for w, f in rep.right_special
        ],
        "left_special": [
            {"word": render(w), "preceders": sorted(f)} for w, f in rep.left_special
        ],
        "bi_special": [render(w) for w in rep.bi_special],
        "threads": _threads(),
    }
    _emit(dump_report(report_envelope("special", data)), args.out, "json", {"json"})
    return 0


def _cmd_sadic_verify(args):
    params = load_params(args.params)
    kmax = args.kmax
    checks = {}

    adm = validate_params(params)
    checks["admissibility"] = {"pass": True, "witness": adm.tier,
                               "violations": list(adm.violations)}

    ok, witness = True, ""
    for k in range(2, kmax + 1):
        dw = derived_words(params, k, args.max_symbols)
        gen = generate_word(params.pi, params.pairs, k - 1, args.max_symbols)
        if dw.v != gen:
            ok, witness = False, f"v_{k} != generated level-{k - 1} word"
            break
        if len(dw.v) < len(dw.u):
            direct = max_common_suffix_periodic(dw.v, dw.u)
            if direct != dw.s:
                ok, witness = False, f"s_{k} recursion disagrees with direct suffix scan"
                break
    checks["derived-words"] = {"pass": ok, "witness": witness}

    if adm.tier == "full-4/3":
        ok, witness = True, ""
        for k in range(1, kmax + 1):
            dw = derived_words(params, k, args.max_symbols)
            if not len(dw.p) + len(dw.s) < min(len(dw.u) + len(dw.v), 3 * len(dw.v)):
                ok, witness = False, f"prefix/suffix bound fails at level {k}"
                break
        checks["prefix-suffix-bound"] = {"pass": ok, "witness": witness}

    ok, witness = True, ""
    for k in range(0, min(kmax, 6) + 1):
        for i in (0, 1):
            for reps in (1, 2, 3):
                try:
                    count, bound = commutation_diff_count(params, i, k, reps, args.max_symbols)
                except errors.BudgetExceededError:
                    continue
                if count > bound:
                    ok, witness = False, f"count {count} > bound {bound} at (i={i}, k={k}, p={reps})"
    checks["commutation-diff-bound"] = {"pass": ok, "witness": witness}

    lv, _, _, _ = derived_lengths(params, params.levels + 1)
    ok, witness = True, ""
    try:
        horizon = min(10_000, lv[params.levels + 1] - 1)
        k_syn = min(2, params.levels - 1)
        _, max_gap = syndetic_set(params, k_syn, horizon)
        d_k = lv[k_syn + 1]
        if max_gap > d_k:
            ok, witness = False, f"max gap {max_gap} > d_{k_syn} = {d_k}"
    except errors.SubshiftLabError as e:
        ok, witness = False, str(e)
    checks["syndetic-gaps"] = {"pass": ok, "witness": witness}

    ok, witness = True, ""
    try:
        k_dec = min(2, kmax - 1)
        target = derived_words(params, k_dec + 2, args.max_symbols).v
        dec = unique_decompose(target, params, k_dec)
        blocks = derived_words(params, k_dec + 1, args.max_symbols)
        rebuilt = b"".join((blocks.v, blocks.u)[b] for b in dec.blocks)
        if rebuilt != target:
            ok, witness = False, "reassembled blocks differ from input"
    except errors.SubshiftLabError as e:
        ok, witness = False, str(e)
    checks["unique-decomposition"] = {"pass": ok, "witness": witness}

    data = {"checks": checks, "kmax": kmax, "threads": _threads()}
    _emit(dump_report(report_envelope("sadic-verify", data)), args.out, "json", {"json"})
    return 0 if all(c["pass"] for c in checks.values()) else 3


def _cmd_sadic_density(args):
    params = load_params(args.params)
    if args.q is not None:
        q = args.q
    else:
        lv, _, _, _ = derived_lengths(params, params.levels + 1)
        if args.q_from_dk + 1 not in lv:
            raise errors.InvalidArgumentError("level index out of range")
        q = lv[args.q_from_dk + 1]
    rep = shift_diff_density(params, q, args.N, budget=args.max_symbols)
    data = {
        "q": rep.q,
        "N": rep.N,
        "density": str(rep.density),
        "density_float": float(rep.density),
        "level": rep.level,
        "bound": str(rep.bound) if rep.bound is not None else None,
        "bound_float": float(rep.bound) if rep.bound is not None else None,
        "within_bound": (rep.bound is None) or rep.density <= rep.bound,
        "threads": _threads(),
    }
    _emit(dump_report(report_envelope("density", data)), args.out, "json", {"json"})
    return 0


def _cmd_spectrum_alpha(args):
    params = load_params(args.params)
    est = eigenvalue(params, args.K, args.bits)
    digits = max(8, int(args.bits * 0.30103))
    data = {
        "alpha": f"%.{digits}g" % est.alpha,
        "beta": f"%.{digits}g" % est.beta_cf,
        "precision_bits": est.precision_bits,
        "error_bound": str(est.error_bound),
        "error_bound_float": float(est.error_bound),
        "distances": list(est.distances),
        "threads": _threads(),
    }
    _emit(dump_report(report_envelope("spectrum-alpha", data)), args.out, "json", {"json"})
    return 0


def _parse_freq(text: str):
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return float(text)


def _cmd_spectrum_probe(args):
    params = load_params(args.params)
    x = generate_prefix(params.pi, params.pairs, params.levels, args.N)
    freq = _parse_freq(args.freq)
    lines = ["N,modulus"]
    N = 1000
    ladder = []
    while N < args.N:
        ladder.append(N)
        N *= 10
    ladder.append(args.N)
    for N in ladder:
        lines.append(f"{N},{weyl_probe(x, freq, N):.6e}")
    _emit("\n".join(lines) + "\n", args.out, "csv", {"csv"})
    return 0


def _cmd_example_build(args):
    cfg = ExampleConfig(kmax=args.kmax, search_cap=args.search_cap)
    build = build_example(cfg)
    if args.out in ("csv", "json", "dot"):
        raise errors.InvalidArgumentError("example build writes a params file; pass a path")
    save_params(build.params, args.out)
    return 0


def _cmd_example_landmarks(args):
    params = load_params(args.params)
    from .sadic import calibration_length

    need = calibration_length(params) + 2
    lv, _, _, _ = derived_lengths(params, params.levels + 1)
    level = next(
        (k for k in range(1, params.levels + 1) if lv[k + 1] >= max(4 * need, 64)), None
    )
    if level is None:
        raise errors.InsufficientDataError("parameter sequence too short for calibration")
    nmax = min(max(2 * need, lv[level + 1] // 4), 20_000)
    table = _validated_table(params, level, nmax, args.max_symbols)
    rep = landmark_complexities(params, args.K, table)
    lines = ["k,q_peak,p_peak,ratio_peak,excess_peak,q_base,p_base,ratio_base,table_agrees"]
    for row in rep.rows:
        lines.append(
            f"{row.k},{row.q_peak},{row.p_peak},{float(row.ratio_peak):.10f},"
            f"{float(row.excess_peak):.1f},{row.q_base},{row.p_base},"
            f"{float(row.ratio_base):.10f},{row.table_agrees}"
        )
    _emit("\n".join(lines) + "\n", args.out, "csv", {"csv"})
    return 0


def _cmd_recover(args):
    x = load_symbols(args.input)
    result = recover_structure(x, args.depth)
    if args.out in ("csv", "json", "dot"):
        raise errors.InvalidArgumentError("recover writes a params file; pass a path")
    save_params(result.params, args.out)
    sys.stderr.write(
        f"depth={result.depth} certified={result.certified} "
        f"certificate_length={result.certificate_length}\n"
    )
    return 0 if result.certified else 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subshift-lab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, params=True):
        if params:
            p.add_argument("--params", required=True, help="parameter or factor-data JSON file")
        p.add_argument("--max-symbols", type=int, default=DEFAULT_BUDGET,
                       help="symbol budget for generated words")

    p = sub.add_parser("complexity", help="n,p(n) profile of a validated table")
    add_common(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", default="csv")
    p.set_defaults(func=_cmd_complexity)

    p = sub.add_parser("rauzy", help="Rauzy graph at order n as DOT")
    add_common(p)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default="dot")
    p.set_defaults(func=_cmd_rauzy)

    p = sub.add_parser("special", help="left/right special words at order n")
    add_common(p)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default="json")
    p.set_defaults(func=_cmd_special)

    p_sadic = sub.add_parser("sadic", help="derived-word analyses")
    sadic_sub = p_sadic.add_subparsers(dest="subcommand", required=True)

    p = sadic_sub.add_parser("verify", help="invariant battery as a JSON report")
    add_common(p)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--out", default="json")
    p.set_defaults(func=_cmd_sadic_verify)

    p = sadic_sub.add_parser("density", help="shift-difference density vs bound")
    add_common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--q-from-dk", type=int, help="use q = d_k for this level k")
    group.add_argument("--q", type=int, help="explicit shift q")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default="json")
    p.set_defaults(func=_cmd_sadic_density)

    p_spec = sub.add_parser("spectrum", help="eigenvalue machinery")
    spec_sub = p_spec.add_subparsers(dest="subcommand", required=True)

    p = spec_sub.add_parser("alpha", help="eigenvalue frequency with certified error")
    add_common(p)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--out", default="json")
    p.set_defaults(func=_cmd_spectrum_alpha)

    p = spec_sub.add_parser("probe", help="Weyl-sum modulus ladder at a frequency")
    add_common(p)
    p.add_argument("--freq", required=True, help="float or rational like 3/7")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default="csv")
    p.set_defaults(func=_cmd_spectrum_probe)

    p_ex = sub.add_parser("example", help="prime-height doubling construction")
    ex_sub = p_ex.add_subparsers(dest="subcommand", required=True)

    p = ex_sub.add_parser("build", help="build parameters and save them")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--seed-schedule", default="default", choices=["default"])
    p.add_argument("--search-cap", type=int, default=100_000)
    p.add_argument("--out", required=True, help="output params JSON path")
    p.set_defaults(func=_cmd_example_build)

    p = ex_sub.add_parser("landmarks", help="complexity landmarks of a built example")
    add_common(p)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--out", default="csv")
    p.set_defaults(func=_cmd_example_landmarks)

    p = sub.add_parser("recover", help="recover structure from a symbol file")
    p.add_argument("--input", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", required=True, help="output params JSON path")
    p.set_defaults(func=_cmd_recover)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except errors.BudgetExceededError as e:
        sys.stderr.write(f"error: {e}\n")
        return 4
    except (errors.InsufficientDepthError, errors.InsufficientDataError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (errors.SubshiftLabError, OSError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
