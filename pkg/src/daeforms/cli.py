"""Command line front end.

Subcommands: wong, qpff, qpdff, verify.  Exit codes follow one contract
everywhere: 0 for success, 1 when a mathematical check failed, 2 for input
errors (unreadable files, parse errors, inconsistent shapes).
"""

from __future__ import annotations

import argparse
import sys as _sys

from . import pdfeedback, pfeedback, sysio, wong
from .linalg import Mat, Subspace
from .sysio import ParseError


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _print_subspace(label: str, space: Subspace, out):
    print(f"{label}: dim {space.dim} in Q^{space.ambient_dim}", file=out)
    for row in space.basis.data:
        print("    " + " ".join(sysio.format_rational(x) for x in row), file=out)


def cmd_wong(args, out) -> int:
    system, meta = sysio.parse_system(_read(args.input))
    if meta.get("name"):
        print(f"system: {meta['name']}", file=out)
    report = wong.wong_limits(system)
    print(f"shape: l={system.l} n={system.n} m={system.m}", file=out)
    print(f"i_star: {report.i_star}", file=out)
    print(f"j_star: {report.j_star}", file=out)
    print(f"dim V_star: {report.v_limit.dim}", file=out)
    print(f"dim W_star: {report.w_limit.dim}", file=out)
    for idx, space in enumerate(report.v_chain):
        _print_subspace(f"V^{idx}", space, out)
    for idx, space in enumerate(report.w_chain):
        _print_subspace(f"W^{idx}", space, out)
    if args.check_identities:
        identities = wong.check_limit_identities(system)
        projection = wong.augmented_projection_check(system)
        print(f"limit identities: {'ok' if identities.ok else 'FAILED'}", file=out)
        print(f"augmented projection: {'ok' if projection else 'FAILED'}", file=out)
        if not (identities.ok and projection):
            return 1
    return 0


def _write_output(path: str, chunks: list[str]):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(chunks))


def cmd_qpff(args, out) -> int:
    system, _ = sysio.parse_system(_read(args.input))
    dec = pfeedback.compute_qpff(system)
    z = dec.block_sizes
    report = pfeedback.verify_qpff(dec.transformed, z)
    print(f"block signature: {z.signature()}", file=out)
    print(f"l_sizes: {z.l1} {z.l2} {z.l3}", file=out)
    print(f"n_sizes: {z.n1} {z.n2} {z.n3}", file=out)
    print(f"m_sizes: {z.m1} {z.m2} {z.m3}", file=out)
    print(f"verified: {'ok' if report.ok else 'FAILED'}", file=out)
    if args.classify:
        cls = pfeedback.classify_controllability(system)
        for (li, ni, mi), label in cls.described_blocks():
            print(f"  Sigma_{{{li},{ni},{mi}}}: {label}", file=out)
        print(f"  redundant input directions (dim ker B): {cls.m_kernel}", file=out)
        print(f"  constrained input directions: {cls.m_constrained}", file=out)
    chunks = [f"# quasi P-feedback form of {args.input}",
              sysio.format_int_list("l_sizes", (z.l1, z.l2, z.l3)),
              sysio.format_int_list("n_sizes", (z.n1, z.n2, z.n3)),
              sysio.format_int_list("m_sizes", (z.m1, z.m2, z.m3)),
              sysio.format_system(dec.transformed).rstrip("\n"),
              sysio.format_witness(dec.witness).rstrip("\n")]
    if args.decouple:
        decoupled, extra = pfeedback.decouple_qpff(dec.transformed, z)
        dec_report = pfeedback.verify_qpff(decoupled, z)
        print(f"decoupled: {'ok' if dec_report.ok else 'FAILED'}", file=out)
        chunks.append("# decoupled triple")
        for key, mat in (("E_dec", decoupled.E), ("A_dec", decoupled.A), ("B_dec", decoupled.B)):
            chunks.append(sysio.format_matrix(key, mat))
        if not dec_report.ok:
            return 1
    if args.output:
        _write_output(args.output, chunks + [""])
    return 0 if report.ok else 1


def cmd_qpdff(args, out) -> int:
    system, _ = sysio.parse_system(_read(args.input))
    dec = pdfeedback.compute_qpdff(system)
    z = dec.block_sizes
    report = pdfeedback.verify_qpdff(dec.transformed, z)
    print(f"l_sizes: {z.l1} {z.l2} {z.l3}", file=out)
    print(f"input row block: {z.m2}", file=out)
    print(f"n_sizes: {z.n1} {z.n2} {z.n3}", file=out)
    print(f"m_sizes: {z.m1} {z.m2}", file=out)
    print(f"verified: {'ok' if report.ok else 'FAILED'}", file=out)
    chunks = [f"# quasi PD-feedback form of {args.input}",
              sysio.format_int_list("l_sizes", (z.l1, z.l2, z.l3)),
              sysio.format_int_list("n_sizes", (z.n1, z.n2, z.n3)),
              sysio.format_int_list("m_sizes", (z.m1, z.m2)),
              sysio.format_system(dec.transformed).rstrip("\n"),
              sysio.format_witness(dec.witness).rstrip("\n")]
    if args.decouple:
        decoupled, _extra = pdfeedback.decouple_qpdff(dec.transformed, z)
        pattern_ok = pdfeedback.decoupled_wong_pattern_ok(decoupled, z)
        print(f"decoupled: {'ok' if pattern_ok else 'FAILED'}", file=out)
        chunks.append("# decoupled triple")
        for key, mat in (("E_dec", decoupled.E), ("A_dec", decoupled.A), ("B_dec", decoupled.B)):
            chunks.append(sysio.format_matrix(key, mat))
        if not pattern_ok:
            return 1
    if args.output:
        _write_output(args.output, chunks + [""])
    return 0 if report.ok else 1


def cmd_verify(args, out) -> int:
    system, _ = sysio.parse_system(_read(args.input))
    witness = sysio.parse_witness(_read(args.witness))
    doc = sysio.parse_document(_read(args.data))
    form = args.form

    if form in ("pff", "qpff"):
        if not isinstance(witness, pfeedback.PTransform):
            raise ParseError(0, "P-feedback forms need a witness without F_D")
        transformed = pfeedback.apply_p_transform(system, witness)
    else:
        if isinstance(witness, pfeedback.PTransform):
            witness = pdfeedback.PDTransform(witness.S, witness.T, witness.V,
                                             witness.F_P, Mat.zeros(system.m, system.n))
        transformed = pdfeedback.apply_pd_transform(system, witness)

    if form == "pff":
        ok = pfeedback.verify_pff(transformed, sysio.parse_pff_data(doc))
        detail = "" if ok else "transformed system does not match the PFF template"
    elif form == "pdff":
        ok = pdfeedback.verify_pdff(transformed, sysio.parse_pdff_data(doc))
        detail = "" if ok else "transformed system does not match the PDFF template"
    elif form == "qpff":
        report = pfeedback.verify_qpff(transformed, sysio.parse_qpff_sizes(doc))
        ok = report.ok
        detail = "" if ok else f"first failing condition: {report.failures()[0]}"
    else:
        report = pdfeedback.verify_qpdff(transformed, sysio.parse_qpdff_sizes(doc))
        ok = report.ok
        detail = "" if ok else f"first failing condition: {report.failures()[0]}"

    print(f"verify {form}: {'pass' if ok else 'FAIL'}", file=out)
    if detail:
        print(detail, file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daeforms",
        description="Exact feedback-form decompositions of descriptor systems [E, A, B]")
    subs = parser.add_subparsers(dest="command", required=True)

    p_wong = subs.add_parser("wong", help="augmented Wong sequences and limits")
    p_wong.add_argument("input")
    p_wong.add_argument("--check-identities", action="store_true")
    p_wong.set_defaults(func=cmd_wong)

    p_qpff = subs.add_parser("qpff", help="quasi P-feedback form")
    p_qpff.add_argument("input")
    p_qpff.add_argument("--decouple", action="store_true")
    p_qpff.add_argument("--classify", action="store_true")
    p_qpff.add_argument("--output")
    p_qpff.set_defaults(func=cmd_qpff)

    p_qpdff = subs.add_parser("qpdff", help="quasi PD-feedback form")
    p_qpdff.add_argument("input")
    p_qpdff.add_argument("--decouple", action="store_true")
    p_qpdff.add_argument("--output")
    p_qpdff.set_defaults(func=cmd_qpdff)

    p_verify = subs.add_parser("verify", help="check a transformation witness")
    p_verify.add_argument("input")
    p_verify.add_argument("--witness", required=True)
    p_verify.add_argument("--form", required=True,
                          choices=("pff", "pdff", "qpff", "qpdff"))
    p_verify.add_argument("--data", required=True)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or _sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
