from .core import (DenseTensor, MalformedNetworkError, SignatureMismatchError,
                   TensorNetwork, chain2, contract, contract_bruteforce,
                   elementary, networks_equal, single_node, tensors_equal)
from .suite import CheckResult, invariance_suite, toric_network
from .gauge import gauge_transform_check
