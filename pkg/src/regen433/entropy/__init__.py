"""Computer-aided converse: exact entropy LP with symmetry and dependency reduction."""
