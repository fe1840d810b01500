"""
Команды CLI: функции и подприложение lab регистрируются в корневом приложении cli.main
"""
