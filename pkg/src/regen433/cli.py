"""Command-line entry point: ``regen433 <subcommand> ...``.

Exit codes: 0 success, 1 verification or assertion failure, 2 usage error,
3 I/O error. Every number that is part of a proof is written as "p/q".
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits with 2; keep the prefix stable
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def rational(text: str) -> Fraction:
    """argparse type for exact rationals: integers or 'p/q', never decimals."""
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or p/q rational")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has a zero denominator") from None


def fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _code_id(text: str):
    from regen433.codes import CodeId

    try:
        return CodeId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


BUNDLED_PREFIX = "bundled:"


def bundled_scenarios() -> list[str]:
    root = resources.files("regen433") / "data" / "scenarios"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


def read_scenario_text(ref: str) -> str:
    if ref.startswith(BUNDLED_PREFIX):
        name = ref[len(BUNDLED_PREFIX):]
        res = resources.files("regen433") / "data" / "scenarios" / f"{name}.txt"
        if not res.is_file():
            raise FileNotFoundError(f"no bundled scenario {name!r}; have {', '.join(bundled_scenarios())}")
        return res.read_text()
    return Path(ref).read_text()


# ---------------------------------------------------------------------------
# subcommands


def cmd_code_roundtrip(args, out) -> int:
    from regen433 import codes

    p = codes.code_parameters(args.code)
    if args.exhaustive:
        msgs, mode = list(codes.all_messages(args.code)), "exhaustive"
    else:
        msgs, mode = codes.sample_messages(args.code, args.sample, args.seed), "sample"
    rep = codes.roundtrip_check(args.code, msgs)
    print(f"code\t{args.code.value}", file=out)
    print(f"point\t{fmt(p.alpha_bar)},{fmt(p.beta_bar)}", file=out)
    print(f"parameters\tB={p.B}\talpha={p.alpha}\tbeta={p.beta}", file=out)
    print(f"messages\t{rep.messages}\t{mode}", file=out)
    print(f"decode\tpass={rep.decode_pass}\tfail={rep.decode_fail}", file=out)
    print(
        f"repair\tpass={rep.repair_pass}\tfail={rep.repair_fail}\tbits_per_repair={p.d * p.beta}",
        file=out,
    )
    if args.vectors:
        Path(args.vectors).write_text(codes.vector_dump(args.code, msgs))
    print(f"result\t{'PASS' if rep.ok else 'FAIL'}", file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_sim_run(args, out) -> int:
    from regen433 import cluster

    text = read_scenario_text(args.scenario)
    try:
        scenario = cluster.parse_scenario(text)
    except ValueError as exc:
        print(f"scenario parse error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        result = cluster.run_scenario(scenario)
    except cluster.ScenarioError as exc:
        print(f"scenario failed at step {exc.step}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "events.log").write_text(result.event_log())
    (out_dir / "bandwidth.csv").write_text(result.bandwidth_csv())
    for ev in result.repairs:
        print(f"repair\t{ev.repair_index}\tnode={ev.failed_id}\ttotal_bits={ev.total_bits}", file=out)
    print(f"total_bits\t{result.total_bits}", file=out)
    return EXIT_OK


def cmd_region(args, out) -> int:
    from regen433 import region

    reg = region.cutset_region() if args.which == "cutset" else region.exact_region()
    hs, vs = region.export_region(reg)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "halfspaces.csv").write_text(hs)
    (out_dir / "vertices.csv").write_text(vs)
    verts = region.vertices(reg)
    print(f"region\t{args.which}", file=out)
    print(f"vertices\t{len(verts)}", file=out)
    for x, y in verts:
        print(f"vertex\t{fmt(x)},{fmt(y)}", file=out)
    if args.gap:
        g = region.max_gap(region.cutset_region(), region.exact_region())
        print(f"gap_point\t{fmt(g.point[0])},{fmt(g.point[1])}", file=out)
        if g.witness is not None:
            h = g.witness
            print(f"gap_halfspace\t{fmt(h.a)} alpha + {fmt(h.b)} beta >= {fmt(h.c)}", file=out)
        print(f"gap_raw\t{fmt(g.raw)}", file=out)
        print(f"gap_normalized\t{fmt(g.normalized)}", file=out)
    return EXIT_OK


def cmd_prove(args, out) -> int:
    from regen433.entropy import certificate as cert_mod
    from regen433.entropy.lp import default_lp

    a, b, c = args.a, args.b, args.c
    if a < 0 or b < 0 or (a == 0 and b == 0):
        print("error: --a and --b must be nonnegative and not both zero", file=sys.stderr)
        return EXIT_USAGE
    lp = default_lp()
    optimum = lp.min_objective(a, b)
    print(f"objective\t{fmt(a)} alpha + {fmt(b)} beta", file=out)
    print(f"optimum\t{fmt(optimum)}", file=out)
    try:
        cert = cert_mod.extract_certificate(a, b, c, lp=lp)
    except cert_mod.CertificateRefused as exc:
        print(f"refused\trequested {fmt(exc.requested)} exceeds optimum {fmt(exc.optimum)}", file=out)
        return EXIT_FAIL
    if not args.no_sparsify:
        cert = cert_mod.sparsify_certificate(cert)
    verdict = cert_mod.verify_certificate(cert)
    if not verdict:
        print(f"internal error: certificate failed verification: {verdict.diagnostic}", file=sys.stderr)
        return EXIT_FAIL
    cert.write(args.out)
    print(f"certificate\t{args.out}\tlines={cert.support}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from regen433.entropy import certificate as cert_mod

    text = Path(args.cert).read_text()
    try:
        cert = cert_mod.parse_certificate(text)
    except cert_mod.CertificateFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        print("result\tFAIL", file=out)
        return EXIT_FAIL
    verdict = cert_mod.verify_certificate(cert)
    print(f"target\t{cert.header()[len('target: '):]}", file=out)
    print(f"lines\t{cert.support}", file=out)
    if not verdict:
        print(f"diagnostic\t{verdict.diagnostic}", file=out)
    print(f"result\t{'PASS' if verdict else 'FAIL'}", file=out)
    return EXIT_OK if verdict else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regen433", description="(4,3,3) exact-repair regenerating codes toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("code-roundtrip", help="encode/decode/repair check of one code")
    s.add_argument("--code", type=_code_id, required=True, help="msr, mbr or interior")
    s.add_argument("--exhaustive", action="store_true", help="check every message")
    s.add_argument("--sample", type=int, default=16, help="messages checked without --exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--vectors", metavar="PATH", help="write a hex dump of the checked messages")
    s.set_defaults(func=cmd_code_roundtrip)

    s = sub.add_parser("sim-run", help="replay a cluster scenario")
    s.add_argument("scenario", help=f"scenario file, or {BUNDLED_PREFIX}<name>")
    s.add_argument("--out-dir", default=".", help="where events.log and bandwidth.csv go")
    s.set_defaults(func=cmd_sim_run)

    s = sub.add_parser("region", help="export a rate region as CSV")
    s.add_argument("which", choices=["cutset", "exact"])
    s.add_argument("--out-dir", default=".", help="where halfspaces.csv and vertices.csv go")
    s.add_argument("--gap", action="store_true", help="also report the cut-set vertex outside the exact region")
    s.set_defaults(func=cmd_region)

    s = sub.add_parser("prove", help="prove a*alpha + b*beta >= c*B and write a certificate")
    s.add_argument("--a", type=rational, required=True)
    s.add_argument("--b", type=rational, required=True)
    s.add_argument("--c", type=rational, required=True)
    s.add_argument("--out", default="certificate.txt", help="certificate path")
    s.add_argument("--no-sparsify", action="store_true")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("verify", help="independently check a certificate file")
    s.add_argument("cert")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
