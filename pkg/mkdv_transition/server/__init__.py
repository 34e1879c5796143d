"""
FastMCP tool server.
"""
