"""Command-line entry points for the dipolar SLE lab."""
