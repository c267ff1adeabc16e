from fastapi import FastAPI
from routers import analytics


app = FastAPI(
    title="SIRS Extinction Analytics",
    description="Closed-form extinction-time laws, case classification and hitting probabilities for SIRS and birth-death chains.",
    version="1.0.0"
)

# Include routers
app.include_router(analytics.router)

@app.get("/")
async def index() -> dict:
    return {"service": app.title, "version": app.version, "endpoints": ["/analytics/classify", "/analytics/law", "/analytics/hitprob"]}

# if __name__ == "__main__":
#     import uvicorn
#     uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=True)
