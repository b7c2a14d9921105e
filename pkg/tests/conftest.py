from __future__ import annotations

from hypothesis import settings

settings.register_profile("covknot", max_examples=40, deadline=None)
settings.load_profile("covknot")
