import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'bpa_project.settings')
django.setup()
