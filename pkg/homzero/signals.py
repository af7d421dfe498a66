from django.dispatch import Signal

# args: budget, reason
budget_exhausted = Signal()

# args: degree, ranks
pre_homology = Signal()
