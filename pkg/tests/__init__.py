"""Test suite for photonenv."""
