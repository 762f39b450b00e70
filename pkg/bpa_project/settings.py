"""
Django settings for bpa_project project.
"""

from pathlib import Path
from dotenv import load_dotenv
import os

load_dotenv()


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-dev-key-change-in-production-123456789')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv('DJANGO_DEBUG', 'True') == 'True'

ALLOWED_HOSTS = ['localhost', '127.0.0.1', 'testserver']


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'django.contrib.staticfiles',
    'rest_framework',
    'drf_spectacular',
    'barred_arrangements',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'bpa_project.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'bpa_project.wsgi.application'


# Database
# Nothing is persisted; every table is recomputed from its parameters.

DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.0/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Static files (CSS, JavaScript, Images)
# https://docs.djangoproject.com/en/5.0/howto/static-files/

STATIC_URL = 'static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# REST Framework Configuration
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
        'rest_framework.renderers.BrowsableAPIRenderer',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_PAGINATION_CLASS': None,
    'PAGE_SIZE': None,
    'DEFAULT_SCHEMA_CLASS': 'drf_spectacular.openapi.AutoSchema',
}

# drf-spectacular settings
SPECTACULAR_SETTINGS = {
    'TITLE': 'Barred Preferential Arrangements API',
    'DESCRIPTION': 'Exact H_n(lambda, beta, gamma), generalized Stirling and Bell numbers, identity checks',
    'VERSION': '1.0.0',
    'SERVE_INCLUDE_SCHEMA': False,
    'COMPONENT_SPLIT_REQUEST': True,
}


# Barred preferential arrangement settings

# Base URL of the OEIS server for `bfile --fetch`; empty keeps runs hermetic.
BPA_OEIS_BASE_URL = os.getenv('BPA_OEIS_BASE_URL', '')
BPA_FETCH_TIMEOUT = int(os.getenv('BPA_FETCH_TIMEOUT', '30'))

BPA_ENUMERATION_BUDGET = int(os.getenv('BPA_ENUMERATION_BUDGET', str(10 ** 8)))
BPA_CELL_ORACLE_CAP = int(os.getenv('BPA_CELL_ORACLE_CAP', '8'))
BPA_VERIFY_WORKERS = int(os.getenv('BPA_VERIFY_WORKERS', '4'))
BPA_API_MAX_N = int(os.getenv('BPA_API_MAX_N', '200'))
# Largest lambda, beta, gamma and alpha bound of an identity suite run over the API.
BPA_API_MAX_GRID = int(os.getenv('BPA_API_MAX_GRID', '4'))

BPA_FIXTURE_DIR = BASE_DIR / 'barred_arrangements' / 'fixtures' / 'bfiles'


# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'barred_arrangements': {
            'handlers': ['console'],
            'level': os.getenv('BPA_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
