from django.apps import AppConfig

from homzero.conf import Conf


class HomzeroConfig(AppConfig):
    name = "homzero"
    verbose_name = Conf.LABEL
