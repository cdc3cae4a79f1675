"""
Bresse stability laboratory command line
Binds scenario files to simulations, resolvent sweeps, spectra, witness series and the summary table
"""
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from config.logging_config import setup_logging
from tools import TOOLS
from utils.report_builders import ReportBuilder


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="Output directory (created if missing).")
    common.add_argument("--threads", type=int, help="Worker threads for sweeps (default: $BRESSE_THREADS or 1).")
    common.add_argument("--seed", type=int, help="Seed for random initial states.")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default: $BRESSE_LOG_LEVEL).")

    scenario = argparse.ArgumentParser(add_help=False)
    scenario.add_argument("--scenario", required=True, help="Path to a TOML scenario file.")
    scenario.add_argument("--elements", dest="n_elements", type=int, help="Override run.n_elements.")
    scenario.add_argument("--dump-matrices", action="store_true", help="Write M, K, C, G in coordinate format.")

    parser = argparse.ArgumentParser(prog="bresse_lab", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common, scenario], help="Energy trace and decay-law fit.")
    p.add_argument("--tmax", type=float, help="Final time.")
    p.add_argument("--dt", type=float, help="Time step (default: CFL-like h / (2 max c)).")
    p.add_argument("--initial", default="random", help="random | mode:<m> | path to an .npz of nodal fields.")

    for name, text in (("sweep", "Resolvent-norm sweep and stability class."),
                       ("classify", "Expected regime against the class measured by a sweep.")):
        p = sub.add_parser(name, parents=[common, scenario], help=text)
        p.add_argument("--lmin", type=float, help="Lower end of the frequency band.")
        p.add_argument("--lmax", type=float, help="Upper end (at most the resolved-frequency cap).")
        p.add_argument("--samples", type=int, help="Number of sweep bins (one envelope sample each).")
        p.add_argument("--spacing", choices=["log", "linear"], help="Grid spacing.")

    sub.add_parser("spectrum", parents=[common, scenario], help="Eigenvalues and spectral abscissa.")

    p = sub.add_parser("witness", parents=[common, scenario], help="Closed-form DNND witness series.")
    p.add_argument("--modes", type=int, nargs="+", help="Mode indices n (at least four).")
    p.add_argument("--no-cross-check", action="store_true", help="Skip the discrete resolvent comparison.")

    for name in ("table", "report"):
        p = sub.add_parser(name, parents=[common], help="Summary-table reproduction with PASS/FAIL per row.")
        p.add_argument("--elements", dest="n_elements", type=int, help="Elements per fixture (default 200).")
        p.add_argument("--samples", type=int, help="Sweep points per fixture.")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    logger = logging.getLogger('lab')

    result = TOOLS[args.command](vars(args))
    if not result["success"]:
        print(f"bresse_lab {args.command}: {result['error']}", file=sys.stderr)
        return result["exit_code"]

    if result.get("report"):
        sys.stdout.write(ReportBuilder.render(result["report"]))
    logger.info(f"{args.command} finished; outputs in {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
