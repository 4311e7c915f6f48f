"""
MCP Server exposing the flagbott computations as read-only tools.

Implements the Model Context Protocol (MCP) JSON-RPC interface. Every tool
returns the same JSON document the CLI prints with ``--json``.

Protocol specification: https://modelcontextprotocol.io/specification/2025-06-18
"""

import logging
from typing import Any

from flagbott.errors import FlagbottError, format_error
from flagbott.service import FlagbottService, to_json

logger = logging.getLogger(__name__)


# MCP Protocol version
PROTOCOL_VERSION = "2025-06-18"

# Server info
SERVER_INFO = {
    "name": "flagbott",
    "version": "0.1.0",
}

# Server instructions - shown to connecting clients
SERVER_INSTRUCTIONS = """
# flagbott - Schur functors, Bott cohomology and vanishing certificates

Exact integer combinatorics for Dolbeault cohomology of Schur bundles on
Grassmannians and partial flag varieties.

## Tools

| Tool | Use |
|------|-----|
| `lr(r, u, v)` | Littlewood-Richardson decomposition of S_u (x) S_v, length r |
| `bott(d, a)` | Bott data (admissible, degree i, psi) of a weight a in Z^d |
| `split(w, u, d)` | Crossing counts and the Sigma+/Sigma- split of w/chi(u) |
| `grass(r, d, v, dims_only?)` | H^{p,q}(G_r(C^d), S_v Q) as Schur functors of V |
| `flag(d, s, a, P, dims_only?)` | H^{P,q}(F_s(C^d), Q^a) from the flag recursion |
| `hodge(r, d)` | Hodge numbers of G_r(C^d) with the Gaussian binomial check |
| `vanish(n, d, p, q, bundle)` | Vanishing certificate for H^{p,q}(X, bundle) |

## Text forms

- Partitions: `"4,2,1"`; the zero partition is `"0"` or `""`.
- Generalized partitions: `"5,4,-1"`, optionally with a length: `"1;r=3"`.
- Bundles: `schur:2,1`, `tensor:k=1,2;s=3`, `hook:1,3`, `symdet:2`, `wedge:2`, `schurdet:2,1;m=2`.

Verdicts never claim non-vanishing: a failed hypothesis means "not guaranteed".
"""


def _string(description: str) -> dict[str, str]:
    return {"type": "string", "description": description}


def _integer(description: str) -> dict[str, str]:
    return {"type": "integer", "description": description}


class MCPServer:
    """
    MCP Server for the flagbott tools.

    Handles JSON-RPC requests according to the MCP protocol,
    routing to the FlagbottService.
    """

    def __init__(self, service: FlagbottService | None = None):
        self.service = service or FlagbottService()
        self.tools = self._define_tools()
        logger.info(f"MCPServer initialized with {len(self.tools)} tools")

    def _define_tools(self) -> list[dict[str, Any]]:
        """Define available MCP tools with their schemas."""
        dims_only = {"type": "boolean", "description": "Only report dimensions per (p, q)"}
        definitions = [
            ("lr", "Littlewood-Richardson product",
             "Decompose S_u V (x) S_v V into Schur functors with at most r rows.",
             {"r": _integer("Length of u and of every result"),
              "u": _string("Generalized partition, e.g. '2,1' or '1,-1'"),
              "v": _string("Partition, e.g. '1'")},
             ["r", "u", "v"]),
            ("bott", "Bott's theorem",
             "Cohomology of the line bundle of weight a on the complete flag variety of C^d.",
             {"d": _integer("Dimension of V"), "a": _string("Weight, d integers")},
             ["d", "a"]),
            ("split", "Sigma+/Sigma- split",
             "Crossing counts, s_plus, s_minus and the split of w/chi(u) on G_r(C^d).",
             {"w": _string("Generalized partition of length r"),
              "u": _string("Partition with at most r rows"),
              "d": _integer("Dimension of V")},
             ["w", "u", "d"]),
            ("grass", "Grassmannian cohomology table",
             "H^{p,q}(G_r(C^d), S_v Q) for every (p, q).",
             {"r": _integer("Rank of Q"), "d": _integer("Dimension of V"),
              "v": _string("Partition or generalized partition of length r"),
              "dims_only": dims_only},
             ["r", "d", "v"]),
            ("flag", "Flag cohomology slice",
             "H^{P,q}(F_s(C^d), Q^a) for every q.",
             {"d": _integer("Dimension of V"),
              "s": _string("Strictly increasing steps, e.g. '1,3'"),
              "a": _string("Strictly decreasing exponents, one per step"),
              "P": _integer("Holomorphic degree"),
              "dims_only": dims_only},
             ["d", "s", "a", "P"]),
            ("hodge", "Grassmannian Hodge numbers",
             "Hodge numbers of G_r(C^d) with Euler characteristic and Betti numbers.",
             {"r": _integer("Rank of Q"), "d": _integer("Dimension of V")},
             ["r", "d"]),
            ("vanish", "Vanishing certificate",
             "Which theorems guarantee H^{p,q}(X, bundle) = 0 for E ample of rank d on X^n.",
             {"n": _integer("Dimension of X"), "d": _integer("Rank of E"),
              "p": _integer("Holomorphic degree"), "q": _integer("Antiholomorphic degree"),
              "bundle": _string("Bundle text form, e.g. 'schur:2,1'")},
             ["n", "d", "p", "q", "bundle"]),
        ]
        return [
            {
                "name": name,
                "title": title,
                "annotations": {"readOnlyHint": True},
                "description": description,
                "inputSchema": {"type": "object", "properties": properties, "required": required},
            }
            for name, title, description, properties, required in definitions
        ]

    def handle_request(self, body: dict[str, Any]) -> dict[str, Any]:
        """
        Handle incoming MCP JSON-RPC request.

        Args:
            body: JSON-RPC request body

        Returns:
            JSON-RPC response
        """
        method = body.get("method", "")
        params = body.get("params", {})
        request_id = body.get("id")

        logger.debug(f"MCP request: method={method}, id={request_id}")

        try:
            if method == "initialize":
                result = self.handle_initialize(params)
            elif method == "initialized":
                result = {}
            elif method == "tools/list":
                result = self.handle_tools_list()
            elif method == "tools/call":
                result = self.handle_tools_call(params)
            elif method == "resources/list":
                result = {"resources": []}
            elif method == "resources/read":
                logger.warning(f"Unknown resource URI: {params.get('uri', '')}")
                result = {"contents": []}
            elif method == "prompts/list":
                result = self.handle_prompts_list()
            elif method == "prompts/get":
                result = self.handle_prompts_get(params)
            elif method == "ping":
                result = {}
            else:
                logger.warning(f"Unknown MCP method: {method}")
                return self._error_response(request_id, -32601, f"Method not found: {method}")

            return self._success_response(request_id, result)

        except Exception as e:
            logger.exception(f"Error handling MCP request: {e}")
            return self._error_response(request_id, -32603, str(e))

    def handle_initialize(self, params: dict[str, Any]) -> dict[str, Any]:
        client_info = params.get("clientInfo", {})
        logger.info(
            f"MCP client connected: {client_info.get('name', 'unknown')} "
            f"v{client_info.get('version', '?')}"
        )
        return {
            "protocolVersion": PROTOCOL_VERSION,
            "serverInfo": SERVER_INFO,
            "capabilities": {"tools": {}, "resources": {}, "prompts": {}},
            "instructions": SERVER_INSTRUCTIONS.strip(),
        }

    def handle_tools_list(self) -> dict[str, Any]:
        return {"tools": self.tools}

    def handle_tools_call(self, params: dict[str, Any]) -> dict[str, Any]:
        """
        Execute a tool call.

        Flagbott errors (bad input, failed checks) become ``isError`` results
        carrying the error code; anything else propagates to handle_request.
        """
        tool_name = params.get("name", "")
        args = params.get("arguments", {})

        logger.info(f"Tool call: {tool_name} with args: {args}")

        service = self.service
        try:
            if tool_name == "lr":
                payload = service.lr(int(args["r"]), args["u"], args["v"])
            elif tool_name == "bott":
                payload = service.bott(int(args["d"]), args["a"])
            elif tool_name == "split":
                payload = service.split(args["w"], args["u"], int(args["d"]))
            elif tool_name == "grass":
                payload = service.grass(
                    int(args["r"]), int(args["d"]), args["v"], bool(args.get("dims_only"))
                )
            elif tool_name == "flag":
                payload = service.flag(
                    int(args["d"]), args["s"], args["a"], int(args["P"]),
                    bool(args.get("dims_only")),
                )
            elif tool_name == "hodge":
                payload = service.hodge(int(args["r"]), int(args["d"]))
            elif tool_name == "vanish":
                payload = service.vanish(
                    int(args["n"]), int(args["d"]), int(args["p"]), int(args["q"]),
                    args["bundle"],
                )
            else:
                logger.warning(f"Unknown tool requested: {tool_name}")
                return self._tool_error(f"E_TOOL: unknown tool {tool_name}")
        except (FlagbottError, KeyError, ValueError) as e:
            logger.info(f"Tool {tool_name} failed: {format_error(e)}")
            return self._tool_error(format_error(e))

        return {"content": [{"type": "text", "text": to_json(payload)}]}

    def handle_prompts_list(self) -> dict[str, Any]:
        return {
            "prompts": [
                {
                    "name": "flagbott-guide",
                    "description": "Tools, text forms and conventions of flagbott.",
                    "arguments": [],
                }
            ]
        }

    def handle_prompts_get(self, params: dict[str, Any]) -> dict[str, Any]:
        prompt_name = params.get("name", "")

        if prompt_name == "flagbott-guide":
            return {
                "description": "flagbott guide",
                "messages": [
                    {
                        "role": "user",
                        "content": {"type": "text", "text": SERVER_INSTRUCTIONS.strip()},
                    }
                ],
            }

        return {"description": f"Unknown prompt: {prompt_name}", "messages": []}

    def _tool_error(self, message: str) -> dict[str, Any]:
        return {"content": [{"type": "text", "text": message}], "isError": True}

    def _success_response(self, request_id: Any, result: dict[str, Any]) -> dict[str, Any]:
        """Format successful JSON-RPC response."""
        return {"jsonrpc": "2.0", "id": request_id, "result": result}

    def _error_response(self, request_id: Any, code: int, message: str) -> dict[str, Any]:
        """Format error JSON-RPC response."""
        return {"jsonrpc": "2.0", "id": request_id, "error": {"code": code, "message": message}}
