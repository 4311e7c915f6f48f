"""
Flask blueprint factory for the flagbott MCP server.

Usage:
    from flagbott.web import create_mcp_blueprint
    app.register_blueprint(create_mcp_blueprint(), url_prefix="/mcp")
"""

from flagbott.server import PROTOCOL_VERSION, SERVER_INFO


def create_mcp_blueprint(server=None):
    """Create and return Flask MCP blueprint."""
    # Import here to avoid Flask dependency at package level
    from flask import Blueprint, Response, jsonify, request

    from flagbott.server import MCPServer

    mcp_bp = Blueprint("mcp", __name__)

    _mcp_server = server

    def get_mcp_server():
        nonlocal _mcp_server
        if _mcp_server is None:
            _mcp_server = MCPServer()
        return _mcp_server

    @mcp_bp.route("/", methods=["HEAD"])
    def mcp_head():
        return Response(
            status=200,
            headers={"MCP-Protocol-Version": PROTOCOL_VERSION, "Content-Type": "application/json"},
        )

    @mcp_bp.route("/", methods=["POST"])
    def mcp_post():
        body = request.get_json(silent=True)
        if not body:
            return jsonify(
                {"jsonrpc": "2.0", "id": None, "error": {"code": -32700, "message": "Empty body"}}
            ), 400
        return jsonify(get_mcp_server().handle_request(body))

    @mcp_bp.route("/health", methods=["GET"])
    def mcp_health():
        return jsonify({"status": "ok", **SERVER_INFO})

    return mcp_bp


def create_app():
    """Standalone Flask app, e.g. ``gunicorn 'flagbott.web:create_app()'``."""
    from flask import Flask

    app = Flask(__name__)
    app.register_blueprint(create_mcp_blueprint(), url_prefix="/mcp")
    return app
