from hypothesis import settings

settings.register_profile("exact", derandomize=True)
settings.load_profile("exact")
