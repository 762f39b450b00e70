import os

from hypothesis import settings

settings.register_profile("ci", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))

# Full-size acceptance grids run only under the thorough profile.
THOROUGH = os.getenv("HYPOTHESIS_PROFILE", "ci") == "thorough"
