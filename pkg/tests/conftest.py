from hypothesis import settings

settings.register_profile("det", derandomize=True, max_examples=80, deadline=None)
settings.load_profile("det")
