"""Test package for Phantom Purity."""
