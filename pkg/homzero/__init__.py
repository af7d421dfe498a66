VERSION = (0, 4, 0)

default_app_config = "homzero.apps.HomzeroConfig"


__all__ = ["conf", "abelian", "semigroup", "zmodule", "homology", "reflector", "presentation"]
