namespace cmwork {}
