"""Number field arithmetic: orders, prime splitting, class and unit groups."""
