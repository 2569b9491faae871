"""Test package for painleve-separatrix."""
