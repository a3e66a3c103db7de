"""Discrete-time bounded stopwatch automata."""
