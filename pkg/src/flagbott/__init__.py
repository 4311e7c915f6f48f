"""
flagbott - Bott cohomology of Schur bundles on flag varieties.

Exact Littlewood-Richardson decompositions, Dolbeault cohomology tables of
Schur bundles on Grassmannians and partial flag varieties, and vanishing
certificates for Schur powers of ample vector bundles.

Usage:
    # As CLI
    flagbott grass --r 2 --d 4 --v "0"
    flagbott serve           # stdio MCP server
    flagbott serve --http    # HTTP MCP server

    # As library
    from flagbott import MCPServer, FlagbottService
"""

from flagbott.server import MCPServer
from flagbott.service import FlagbottService

__version__ = "0.1.0"
__all__ = ["MCPServer", "FlagbottService"]
