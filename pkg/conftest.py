def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full deformation-ring replays (minutes per prime)")
