"""Quasistatic analysis and planning of tilt-to-pick grasps in a two-support corner."""
