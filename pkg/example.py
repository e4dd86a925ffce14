import InteractionBounds
from InteractionBounds.logger import install_handler

install_handler("INFO")

# At least one of features 1 and 2; features 1 and 3 exclude each other
model = InteractionBounds.FeatureModel(4, [[1, 2], [-1, -3]], name="example")

result = InteractionBounds.samplns(model, time_limit=30)
print(f"{len(result.sample)} configurations, at least {len(result.mutex_set)} needed ({result.status.value})")
for config in result.sample:
    print(config)
