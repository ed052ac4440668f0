"""
Main Application
octa: certified octahedral subdivisions from the command line
"""

import argparse
import logging
import sys
from pathlib import Path

from .config import SearchSettings, load_config, setup_logging, verification_level
from .errors import CellCertificationFailed, MatchingFailure, NotBalanced, OctaError, SearchExhausted
from .fixtures import bipyramid2k, unit_tetrahedron_points
from .formats import load_off_file, read_xpc, write_obj, write_off, write_report, write_xpc
from .subdivide import octahedralize, schlegel_24cell_reference, subdivide_tetrahedron
from .verify import verify_complex

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_BALANCED = 2
EXIT_VERIFICATION = 3
EXIT_SEARCH = 4

REFERENCES = ("schlegel24", "tetra23")
FAMILIES = ("bipyramid2k",)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ Error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _banner(title):
    print("=" * 60)
    print(title)
    print("=" * 60)


def _finish(report, report_path=None):
    for check in report.checks:
        mark = "✅" if check.passed else "❌"
        print(f"   {mark} {check.name}: {check.detail}")
    if report_path:
        write_report(report, report_path)
        print(f"   📝 Report written to {report_path}")
    print("\n" + "=" * 60)
    if report.passed:
        print(f"✅ Verification passed ({report.summary()})")
        return EXIT_OK
    print(f"❌ Verification failed ({report.summary()})")
    return EXIT_VERIFICATION


def cmd_subdivide(args, cfg, settings):
    level = args.verify or verification_level(cfg)
    _banner("🔷 octa subdivide")
    polytope = load_off_file(args.input)
    f0, f1, f2 = polytope.f_vector()
    print(f"   📊 Input: f0={f0} f1={f1} f2={f2}")

    c = octahedralize(polytope, settings, progress=sys.stderr.isatty())
    out = Path(args.out) if args.out else Path(args.input).with_suffix(".xpc")
    write_xpc(c, out)
    print(f"   🧊 {len(c.cells)} cells written to {out}")

    if level == "none":
        return EXIT_OK
    print(f"\n🔍 Verifying ({level})...")
    return _finish(verify_complex(c, polytope, level), args.report)


def cmd_ref(args, cfg, settings):
    _banner(f"🔷 octa ref {args.name}")
    if args.name == "schlegel24":
        c = schlegel_24cell_reference(settings)
    else:
        c = subdivide_tetrahedron(unit_tetrahedron_points(), settings=settings)
    out = Path(args.out) if args.out else Path(f"{args.name}.xpc")
    write_xpc(c, out)
    census = " / ".join(f"{count}" for count in c.type_census().values())
    print(f"   🧊 {len(c.cells)} cells (types 1/2/3/4: {census}) written to {out}")
    return EXIT_OK


def cmd_gen(args, cfg, settings):
    _banner(f"🔷 octa gen {args.family}")
    polytope = bipyramid2k(args.k)
    write_off(polytope, args.out)
    f0, f1, f2 = polytope.f_vector()
    print(f"   📊 f0={f0} f1={f1} f2={f2} written to {args.out}")
    return EXIT_OK


def cmd_export(args, cfg, settings):
    _banner("🔷 octa export")
    c = read_xpc(args.input)
    out = Path(args.out) if args.out else Path(args.input).with_suffix(".obj")
    write_obj(c, out)
    print(f"   📤 {len(c.cells)} cells, {8 * len(c.cells)} triangles written to {out}")
    return EXIT_OK


def cmd_verify(args, cfg, settings):
    level = args.level or verification_level(cfg)
    _banner("🔷 octa verify")
    c = read_xpc(args.input)
    polytope = load_off_file(args.against) if args.against else None
    print(f"   📊 {len(c.vertices)} vertices, {len(c.cells)} cells, level {level}")
    return _finish(verify_complex(c, polytope, level), args.report)


def build_parser():
    parser = _Parser(
        prog="octa",
        description="Certified octahedral subdivisions of balanced simplicial 3-polytopes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Subdivide the regular octahedron and verify everything
  octa subdivide data/octahedron.off --out o.xpc --verify full

  # Reference complexes
  octa ref schlegel24 --out schlegel24.xpc
  octa ref tetra23 --out tetra23.xpc

  # Generate a bipyramid over a hexagon
  octa gen bipyramid2k --k 3 --out hex.off

  # Export for a viewer, check against the input
  octa export o.xpc --out o.obj
  octa verify o.xpc --against data/octahedron.off --level full

Exit codes:
  0 ok, 1 input/usage error, 2 not balanced, 3 verification failed,
  4 search exhausted or certification failed
        """,
    )
    parser.add_argument("--config", default="config.yaml", help="YAML configuration (default: config.yaml)")
    parser.add_argument("--log-level", default=None, help="Override logging.level from the configuration")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("subdivide", help="Octahedralize a balanced polytope given as OFF")
    sub.add_argument("input", help="Path to OFF file")
    sub.add_argument("--out", help="Output XPC file (default: input with .xpc suffix)")
    sub.add_argument("--verify", choices=("none", "fast", "full"), default=None, help="Verification level")
    sub.add_argument("--report", help="Write the verification report as TSV")
    sub.set_defaults(handler=cmd_subdivide)

    ref = commands.add_parser("ref", help="Write a 23-cell reference complex")
    ref.add_argument("name", choices=REFERENCES)
    ref.add_argument("--out", help="Output XPC file (default: <name>.xpc)")
    ref.set_defaults(handler=cmd_ref)

    gen = commands.add_parser("gen", help="Generate a balanced test polytope as OFF")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("--k", type=int, required=True, help="Half the number of equator vertices (k >= 2)")
    gen.add_argument("--out", required=True, help="Output OFF file")
    gen.set_defaults(handler=cmd_gen)

    export = commands.add_parser("export", help="Export an XPC complex as an OBJ triangle mesh")
    export.add_argument("input", help="Path to XPC file")
    export.add_argument("--out", help="Output OBJ file (default: input with .obj suffix)")
    export.set_defaults(handler=cmd_export)

    verify = commands.add_parser("verify", help="Verify an XPC complex")
    verify.add_argument("input", help="Path to XPC file")
    verify.add_argument("--against", help="Input OFF polytope for properness, counts and volume")
    verify.add_argument("--level", choices=("fast", "full"), default=None, help="Complex validation level")
    verify.add_argument("--report", help="Write the verification report as TSV")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None):
    """Main entry point; returns the exit code"""
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        setup_logging(cfg, args.log_level)
        settings = SearchSettings.from_config(cfg)
        return args.handler(args, cfg, settings)
    except NotBalanced as exc:
        print(f"❌ NotBalanced: {exc}", file=sys.stderr)
        return EXIT_NOT_BALANCED
    except (SearchExhausted, CellCertificationFailed, MatchingFailure) as exc:
        logger.debug("construction failed", exc_info=True)
        print(f"❌ {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except (OctaError, FileNotFoundError, ValueError) as exc:
        print(f"❌ Error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KeyboardInterrupt:
        print("\n\n⚠️  Interrupted by user", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
