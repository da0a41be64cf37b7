"""Out-of-Order Evaluation Tests."""
