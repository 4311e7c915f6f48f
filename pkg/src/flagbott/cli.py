"""
flagbott CLI - LR decompositions, Bott cohomology and vanishing certificates.

Usage:
    flagbott lr --r 2 --u "1" --v "1" --json
    flagbott bott --d 2 --a "3,0"
    flagbott split --w "5,4,3,2,-1,-2" --u "7,7,4,3,3,1" --d 13
    flagbott grass --r 2 --d 4 --v "0" --dims-only
    flagbott flag --d 4 --s "1,3" --a "2,0" --P 1
    flagbott hodge --r 2 --d 4
    flagbott vanish --n 3 --d 4 --p 3 --q 3 --bundle "schur:2,1"
    flagbott audit --k "1,1" --s "2" --d 4
    flagbott oracle-product --u "2,1" --v "2,1" --k 4 --slow
    flagbott selftest --seed 7
    flagbott serve              # stdio MCP server
    flagbott serve --http       # HTTP MCP server (Flask)

Exit codes: 0 success, 1 failed check or internal error, 2 bad input,
3 when vanish certifies nothing.
"""

import argparse
import json
import logging
import re
import sys

from flagbott.errors import FlagbottError, ParseError, format_error, is_user_error

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_CERTIFIED = 3

# "--w -1,-2" would otherwise read -1,-2 as an option
_NEGATIVE_VALUE = re.compile(r"^-\d")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting."""

    def error(self, message):
        raise ParseError(message, code="E_USAGE")


def _attach_negative_values(argv: list[str]) -> list[str]:
    joined: list[str] = []
    k = 0
    while k < len(argv):
        token = argv[k]
        following = argv[k + 1] if k + 1 < len(argv) else None
        if (
            token.startswith("--")
            and "=" not in token
            and following is not None
            and _NEGATIVE_VALUE.match(following)
        ):
            joined.append(f"{token}={following}")
            k += 2
            continue
        joined.append(token)
        k += 1
    return joined


# =============================================================================
# Commands: each returns (payload, formatter, exit code)
# =============================================================================


def cmd_lr(args, service):
    from flagbott.service import format_lr

    return service.lr(args.r, args.u, args.v), format_lr, EXIT_OK


def cmd_bott(args, service):
    from flagbott.service import format_bott

    return service.bott(args.d, args.a), format_bott, EXIT_OK


def cmd_split(args, service):
    from flagbott.service import format_split

    return service.split(args.w, args.u, args.d), format_split, EXIT_OK


def cmd_grass(args, service):
    from flagbott.service import format_table

    return service.grass(args.r, args.d, args.v, args.dims_only), format_table, EXIT_OK


def cmd_flag(args, service):
    from flagbott.service import format_table

    payload = service.flag(args.d, args.s, args.a, args.P, args.dims_only)
    return payload, format_table, EXIT_OK


def cmd_hodge(args, service):
    from flagbott.service import format_hodge

    payload = service.hodge(args.r, args.d)
    return payload, format_hodge, EXIT_OK if payload["matches_gaussian"] else EXIT_FAILED


def cmd_vanish(args, service):
    from flagbott.service import format_certificate

    payload = service.vanish(args.n, args.d, args.p, args.q, args.bundle, args.witness)
    return payload, format_certificate, EXIT_OK if payload["certified"] else EXIT_NOT_CERTIFIED


def cmd_audit(args, service):
    from flagbott.service import format_audit

    return service.audit(args.k, args.s, args.d), format_audit, EXIT_OK


def cmd_oracle_product(args, service):
    from flagbott.service import format_oracle

    if not args.slow:
        raise ParseError("oracle-product is exponential; pass --slow to run it", code="E_SLOW")
    payload = service.oracle_product(args.u, args.v, args.k)
    return payload, format_oracle, EXIT_OK if payload["agree"] else EXIT_FAILED


def cmd_selftest(args, service):
    from flagbott.service import format_selftest

    payload = service.selftest(args.seed)
    return payload, format_selftest, EXIT_OK if payload["passed"] else EXIT_FAILED


def cmd_serve(args):
    """Start MCP server (stdio or HTTP)."""
    from flagbott.server import MCPServer

    if args.http:
        try:
            from flask import Flask

            from flagbott.web import create_mcp_blueprint
        except ImportError:
            print("Flask not installed. Run: pip install flagbott[http]", file=sys.stderr)
            return EXIT_FAILED

        app = Flask(__name__)
        app.register_blueprint(create_mcp_blueprint(), url_prefix="/mcp")

        host = args.host or "0.0.0.0"
        port = args.port or 8000
        print(f"Starting flagbott MCP server on http://{host}:{port}/mcp/", file=sys.stderr)
        app.run(host=host, port=port, debug=args.debug)
        return EXIT_OK

    # stdio mode - read JSON-RPC from stdin, write to stdout
    server = MCPServer()
    print("flagbott MCP server (stdio mode). Send JSON-RPC requests via stdin.", file=sys.stderr)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            response = server.handle_request(json.loads(line))
        except json.JSONDecodeError as e:
            response = {
                "jsonrpc": "2.0",
                "id": None,
                "error": {"code": -32700, "message": f"Parse error: {e}"},
            }
        print(json.dumps(response), flush=True)
    return EXIT_OK


COMMANDS = {
    "lr": cmd_lr,
    "bott": cmd_bott,
    "split": cmd_split,
    "grass": cmd_grass,
    "flag": cmd_flag,
    "hodge": cmd_hodge,
    "vanish": cmd_vanish,
    "audit": cmd_audit,
    "oracle-product": cmd_oracle_product,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="flagbott",
        description="Schur functors, Bott cohomology on flag varieties and vanishing certificates",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")

    output = _Parser(add_help=False)
    output.add_argument("--json", action="store_true", help="Print the JSON document")
    dims = _Parser(add_help=False)
    dims.add_argument("--dims-only", action="store_true", help="Only dimensions per (p, q)")

    subparsers = parser.add_subparsers(dest="command")

    lr = subparsers.add_parser("lr", parents=[output], help="Littlewood-Richardson product")
    lr.add_argument("--r", type=int, required=True, help="Length of u and of the result")
    lr.add_argument("--u", required=True, help="Generalized partition, e.g. '2,1'")
    lr.add_argument("--v", required=True, help="Partition, e.g. '1'")

    bott = subparsers.add_parser("bott", parents=[output], help="Bott's theorem for a weight")
    bott.add_argument("--d", type=int, required=True, help="Dimension of V")
    bott.add_argument("--a", required=True, help="Weight, d comma separated integers")

    split = subparsers.add_parser("split", parents=[output], help="Sigma+/Sigma- split")
    split.add_argument("--w", required=True, help="Generalized partition of length r")
    split.add_argument("--u", required=True, help="Partition with at most r rows")
    split.add_argument("--d", type=int, required=True, help="Dimension of V")

    grass = subparsers.add_parser(
        "grass", parents=[output, dims], help="Cohomology table on G_r(C^d)"
    )
    grass.add_argument("--r", type=int, required=True, help="Rank of Q")
    grass.add_argument("--d", type=int, required=True, help="Dimension of V")
    grass.add_argument("--v", required=True, help="Bundle S_v Q, e.g. '2,1' or '1,-1'")

    flag = subparsers.add_parser(
        "flag", parents=[output, dims], help="Cohomology slice on F_s(C^d)"
    )
    flag.add_argument("--d", type=int, required=True, help="Dimension of V")
    flag.add_argument("--s", required=True, help="Strictly increasing steps")
    flag.add_argument("--a", required=True, help="Strictly decreasing exponents")
    flag.add_argument("--P", type=int, required=True, help="Holomorphic degree")

    hodge = subparsers.add_parser("hodge", parents=[output], help="Hodge numbers of G_r(C^d)")
    hodge.add_argument("--r", type=int, required=True, help="Rank of Q")
    hodge.add_argument("--d", type=int, required=True, help="Dimension of V")

    vanish = subparsers.add_parser("vanish", parents=[output], help="Vanishing certificate")
    vanish.add_argument("--n", type=int, required=True, help="Dimension of X")
    vanish.add_argument("--d", type=int, required=True, help="Rank of E")
    vanish.add_argument("--p", type=int, required=True, help="Holomorphic degree")
    vanish.add_argument("--q", type=int, required=True, help="Antiholomorphic degree")
    vanish.add_argument("--bundle", required=True, help="e.g. 'schur:2,1', 'hook:1,3'")
    vanish.add_argument(
        "--witness", action="store_true", help="Scan the flag cohomology behind schur:R"
    )

    audit = subparsers.add_parser("audit", parents=[output], help="Audit a tensor product bound")
    audit.add_argument("--k", default="", help="Symmetric powers, e.g. '1,2'")
    audit.add_argument("--s", default="", help="Exterior powers, e.g. '3'")
    audit.add_argument("--d", type=int, required=True, help="Rank of E")

    oracle = subparsers.add_parser(
        "oracle-product", parents=[output], help="Compare lr with the Schur polynomial oracle"
    )
    oracle.add_argument("--u", required=True, help="Partition")
    oracle.add_argument("--v", required=True, help="Partition")
    oracle.add_argument("--k", type=int, default=4, help="Number of variables (default: 4)")
    oracle.add_argument("--slow", action="store_true", help="Allow the exponential oracle")

    selftest = subparsers.add_parser("selftest", parents=[output], help="Cross-module checks")
    selftest.add_argument("--seed", type=int, default=None, help="Seed (default: FLAGBOTT_SEED)")

    serve = subparsers.add_parser("serve", help="Start MCP server")
    serve.add_argument("--http", action="store_true", help="Use HTTP transport (Flask)")
    serve.add_argument("--host", default=None, help="HTTP host (default: 0.0.0.0)")
    serve.add_argument("--port", type=int, default=None, help="HTTP port (default: 8000)")
    serve.add_argument("--debug", action="store_true", help="Enable Flask debug mode")

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv, run one subcommand, print its output and return the exit code."""
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except FlagbottError as e:
        print(f"error: {format_error(e)}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    if args.command == "serve":
        return cmd_serve(args)
    handler = COMMANDS.get(args.command)
    if handler is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    from flagbott.service import FlagbottService, to_json

    try:
        payload, formatter, code = handler(args, FlagbottService())
    except Exception as e:
        if not isinstance(e, FlagbottError):
            logger.exception(f"{args.command} failed")
        print(f"error: {format_error(e)}", file=sys.stderr)
        return EXIT_USAGE if is_user_error(e) else EXIT_FAILED

    print(to_json(payload) if args.json else formatter(payload))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
