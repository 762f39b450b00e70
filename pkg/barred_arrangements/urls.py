from django.urls import path
from .views import GrowthAPIView, IdentitiesAPIView, SequenceAPIView, StirlingAPIView, StructuresAPIView

urlpatterns = [
    path('sequence/', SequenceAPIView.as_view(), name='sequence'),
    path('stirling/', StirlingAPIView.as_view(), name='stirling'),
    path('identities/', IdentitiesAPIView.as_view(), name='identities'),
    path('growth/', GrowthAPIView.as_view(), name='growth'),
    path('structures/', StructuresAPIView.as_view(), name='structures'),
]
