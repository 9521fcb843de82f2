"""Test suite for idmix."""
