"""HTTP service wrapping the simulator: schemas, handlers, FastAPI app."""
