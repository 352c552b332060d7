class InvalidParameter(ValueError):
    pass


class DomainError(ValueError):
    pass


class ContractError(ValueError):
    pass
