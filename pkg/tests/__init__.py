"""setlerkit test suite."""
