"""Regular subalgebras of simple Lie algebras: wide/narrow decisions."""
