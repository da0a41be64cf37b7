"""Out-of-order membership and evaluation for regular languages and finite semigroups."""
