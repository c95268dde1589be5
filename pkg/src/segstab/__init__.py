"""Orthogonal segment stabbing when every horizontal crosses a common vertical line."""
