from django.apps import AppConfig


class BarredArrangementsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'barred_arrangements'
    verbose_name = 'Barred preferential arrangements'
