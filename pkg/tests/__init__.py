# Tests package for lawson-forge
