from commands import analysis
from commands import embedding
from commands import oracle


def register_commands(app):
    analysis.register(app)
    oracle.register(app)
    embedding.register(app)
