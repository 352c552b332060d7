class ConfigError(Exception):
    def __init__(self, message: str, line: int = None):
        self.line = line
        self.message = message if line is None else f"line {line}: {message}"
        super(ConfigError, self).__init__(self.message)
