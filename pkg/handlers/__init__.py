from handlers import alignment, evaluation, ontology

HANDLER_MODULES = (ontology, alignment, evaluation)
