# Fredkin Lab - 测试模块
