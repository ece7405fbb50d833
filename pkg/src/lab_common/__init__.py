"""Shared plumbing for the dipolar lab packages: errors, random streams, output writers."""
