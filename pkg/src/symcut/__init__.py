"""Exact cake cutting in the Robertson-Webb query model."""
