"""Tests of gogauto; brute-force reference groups live in ``fixture_oracles``."""
